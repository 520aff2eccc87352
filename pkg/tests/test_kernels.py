"""Both kernel backends against independent oracles and each other."""
import itertools
import random

import pytest
import sympy

from concordance_lab import kernels


def brute_trees(n, us, vs, ws):
    """Sum over all (n-1)-edge subsets that connect every vertex."""
    if n <= 1:
        return 1
    total = 0
    for subset in itertools.combinations(range(len(us)), n - 1):
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        ok = True
        for e in subset:
            a, b = find(us[e]), find(vs[e])
            if a == b:
                ok = False
                break
            parent[a] = b
        if ok:
            prod = 1
            for e in subset:
                prod *= ws[e]
            total += prod
    return total


def test_backend_choice_is_reported():
    assert kernels.BACKEND in kernels.BACKENDS


def test_bareiss_matches_sympy(backend):
    rng = random.Random(1)
    for _ in range(60):
        n = rng.randint(0, 6)
        rows = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        if n and rng.random() < 0.3:
            rows[0] = [0] * n  # singular / pivoting cases
            rows[0][n - 1] = 1
        assert backend.bareiss_det(rows) == (sympy.Matrix(rows).det() if n else 1)


def test_bareiss_big_integers(backend):
    rows = [[10**30 + i * j for j in range(4)] for i in range(4)]
    rows[3][3] += 7
    assert backend.bareiss_det(rows) == sympy.Matrix(rows).det()


def test_bareiss_does_not_mutate(backend):
    rows = [[0, 2], [3, 4]]
    backend.bareiss_det(rows)
    assert rows == [[0, 2], [3, 4]]


def test_tree_sum_against_subset_enumeration(backend):
    rng = random.Random(2)
    for _ in range(40):
        n = rng.randint(1, 6)
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.7]
        us = [p[0] for p in pairs]
        vs = [p[1] for p in pairs]
        ws = [rng.choice([-3, -2, -1, 1, 2, 5]) for _ in pairs]
        assert backend.tree_weight_sum(n, us, vs, ws) == brute_trees(n, us, vs, ws)


def test_tree_sum_complete_graph(backend):
    n = 7
    pairs = list(itertools.combinations(range(n), 2))
    us, vs = zip(*pairs)
    assert backend.tree_weight_sum(n, list(us), list(vs), [1] * len(pairs)) == n ** (n - 2)


def test_magnus_backends_agree():
    rng = random.Random(3)
    impls = list(kernels.BACKENDS.values())
    for _ in range(30):
        m = rng.randint(1, 3)
        d = rng.randint(1, 5)
        word = [rng.choice([1, -1]) * rng.randint(1, m) for _ in range(rng.randint(0, 12))]
        outs = [impl.magnus_expand_word(word, m, d) for impl in impls]
        assert all(o == outs[0] for o in outs)


def test_magnus_single_letters(backend):
    # layout for m = 1: [1, X, X^2, X^3]
    assert backend.magnus_expand_word([1], 1, 3) == [1, 1, 0, 0]
    assert backend.magnus_expand_word([-1], 1, 3) == [1, -1, 1, -1]
    assert backend.magnus_expand_word([1, 1, 1], 1, 3) == [1, 3, 3, 1]


@pytest.mark.skipif("cython" not in kernels.BACKENDS, reason="extension not built")
def test_compiled_backend_selected_by_default():
    import os

    if not os.environ.get("CONCORDANCE_LAB_PURE_PYTHON"):
        assert kernels.BACKEND == "cython"
