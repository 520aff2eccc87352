import random
from fractions import Fraction

import pytest

from concordance_lab import kernels
from concordance_lab.graphs import WeightedGraph


@pytest.fixture(params=sorted(kernels.BACKENDS))
def backend(request):
    """Each available kernel backend in turn."""
    return kernels.BACKENDS[request.param]


def random_rational(rng: random.Random, lo: int = -3, hi: int = 3) -> Fraction:
    den = rng.randint(1, 4)
    return Fraction(rng.randint(lo * den, hi * den), den)


def random_graph(rng: random.Random, max_vertices: int = 7, density: float = 0.6) -> WeightedGraph:
    n = rng.randint(1, max_vertices)
    verts = [f"x{i}" for i in range(n)]
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                w = random_rational(rng)
                if w:
                    edges.append((verts[i], verts[j], w))
    return WeightedGraph(verts, edges)
