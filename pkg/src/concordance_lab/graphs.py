"""Weighted graphs, Laplacians, spanning-tree sums and exact symmetric matrices.

Weights are exact rationals. An absent edge and an edge of weight zero are the
same thing, so zero weights are never stored.
"""
from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from . import kernels
from .exact import as_fraction, format_rational

DEFAULT_BRUTEFORCE_BOUND = 10


class GraphError(ValueError):
    pass


class BruteForceBoundExceeded(GraphError):
    pass


def bruteforce_bound() -> int:
    raw = os.environ.get("CONCORDANCE_LAB_BRUTEFORCE_BOUND")
    if raw is None:
        return DEFAULT_BRUTEFORCE_BOUND
    try:
        return int(raw)
    except ValueError:
        raise GraphError(f"CONCORDANCE_LAB_BRUTEFORCE_BOUND must be an integer, got {raw!r}") from None


def _key(u: str, v: str) -> frozenset:
    return frozenset((u, v))


class WeightedGraph:
    """Simple graph on labelled vertices with rational edge weights.

    Vertex order is significant: it fixes the row order of the Laplacian.
    """

    __slots__ = ("vertices", "_w", "_index")

    def __init__(self, vertices: Iterable[str], edges: Iterable[tuple[str, str, object]] = ()):
        verts = tuple(str(v) for v in vertices)
        if len(set(verts)) != len(verts):
            raise GraphError("vertex labels must be unique")
        self.vertices = verts
        self._index = {v: i for i, v in enumerate(verts)}
        w: dict[frozenset, Fraction] = {}
        for u, v, x in edges:
            if u not in self._index or v not in self._index:
                raise GraphError(f"edge {u}-{v} uses an unknown vertex")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            k = _key(u, v)
            if k in w:
                raise GraphError(f"duplicate edge {u}-{v}")
            x = as_fraction(x)
            w[k] = x
        self._w = {k: x for k, x in w.items() if x != 0}

    @property
    def order(self) -> int:
        return len(self.vertices)

    def index(self, v: str) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def weight(self, u: str, v: str) -> Fraction:
        return self._w.get(_key(u, v), Fraction(0))

    def has_edge(self, u: str, v: str) -> bool:
        return _key(u, v) in self._w

    def edges(self) -> list[tuple[str, str, Fraction]]:
        """Edges as ``(u, v, weight)`` with ``u`` before ``v`` in vertex order."""
        out = []
        for k, x in self._w.items():
            u, v = sorted(k, key=self._index.__getitem__)
            out.append((u, v, x))
        out.sort(key=lambda e: (self._index[e[0]], self._index[e[1]]))
        return out

    def neighbors(self, v: str) -> list[str]:
        self.index(v)
        return [u for u in self.vertices if u != v and _key(u, v) in self._w]

    def with_edge(self, u: str, v: str, weight) -> "WeightedGraph":
        if self.has_edge(u, v):
            raise GraphError(f"edge {u}-{v} already present")
        return WeightedGraph(self.vertices, self.edges() + [(u, v, weight)])

    def __eq__(self, other):
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self.vertices == other.vertices and self._w == other._w

    def __hash__(self):
        return hash((self.vertices, frozenset(self._w.items())))

    def __repr__(self):
        return f"WeightedGraph({len(self.vertices)} vertices, {len(self._w)} edges)"


class SymmetricRationalMatrix:
    """Exact symmetric matrix; symmetry is checked on construction."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence[object]]):
        rs = tuple(tuple(as_fraction(x) for x in r) for r in rows)
        n = len(rs)
        for r in rs:
            if len(r) != n:
                raise ValueError("matrix must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if rs[i][j] != rs[j][i]:
                    raise ValueError(f"matrix is not symmetric at ({i}, {j})")
        self.rows = rs

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if isinstance(other, SymmetricRationalMatrix):
            return self.rows == other.rows
        try:
            return self.rows == SymmetricRationalMatrix(other).rows
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(x) for x in r) for r in self.rows)
        return f"SymmetricRationalMatrix([{body}])"

    def to_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self.rows]

    def submatrix(self, keep: Sequence[int]) -> "SymmetricRationalMatrix":
        return SymmetricRationalMatrix([[self.rows[i][j] for j in keep] for i in keep])

    def delete(self, i: int) -> "SymmetricRationalMatrix":
        return self.submatrix([k for k in range(self.dim) if k != i])

    def det(self) -> Fraction:
        return det(self.rows)

    def congruence(self, s: Sequence[Sequence[object]]) -> "SymmetricRationalMatrix":
        """``S A S^T`` for a square matrix ``S`` of the same size."""
        n = self.dim
        s = [[as_fraction(x) for x in r] for r in s]
        sa = [[sum(s[i][k] * self.rows[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        return SymmetricRationalMatrix(
            [[sum(sa[i][k] * s[j][k] for k in range(n)) for j in range(n)] for i in range(n)]
        )


def det(rows: Sequence[Sequence[object]]) -> Fraction:
    """Exact determinant of a rational matrix.

    Each row is cleared of denominators, the integer determinant is taken by
    fraction-free elimination, and the row scalings are divided back out.
    """
    scaled = []
    scale = 1
    for r in rows:
        r = [as_fraction(x) for x in r]
        d = math.lcm(*(x.denominator for x in r)) if r else 1
        scaled.append([int(x * d) for x in r])
        scale *= d
    return Fraction(kernels.bareiss_det(scaled), scale)


# Laplacians and spanning trees


def laplacian(g: WeightedGraph) -> SymmetricRationalMatrix:
    n = g.order
    m = [[Fraction(0)] * n for _ in range(n)]
    for u, v, x in g.edges():
        i, j = g.index(u), g.index(v)
        m[i][j] -= x
        m[j][i] -= x
        m[i][i] += x
        m[j][j] += x
    return SymmetricRationalMatrix(m)


def reduced_laplacian(g: WeightedGraph, v: str) -> SymmetricRationalMatrix:
    return laplacian(g).delete(g.index(v))


def spanning_tree_count(g: WeightedGraph, pivot: str | None = None) -> Fraction:
    """Weighted spanning-tree sum as a reduced Laplacian determinant."""
    if g.order == 0:
        raise GraphError("graph has no vertices")
    v = g.vertices[0] if pivot is None else pivot
    return reduced_laplacian(g, v).det()


def spanning_tree_count_bruteforce(g: WeightedGraph, bound: int | None = None) -> Fraction:
    """Weighted spanning-tree sum by explicit enumeration of trees."""
    if g.order == 0:
        raise GraphError("graph has no vertices")
    limit = bruteforce_bound() if bound is None else bound
    if g.order > limit:
        raise BruteForceBoundExceeded(f"{g.order} vertices exceeds the enumeration bound {limit}")
    edges = g.edges()
    den = math.lcm(*(x.denominator for _, _, x in edges)) if edges else 1
    us = [g.index(u) for u, _, _ in edges]
    vs = [g.index(v) for _, v, _ in edges]
    ws = [int(x * den) for _, _, x in edges]
    total = kernels.tree_weight_sum(g.order, us, vs, ws)
    return Fraction(total, den ** (g.order - 1))


def delete_edge(g: WeightedGraph, u: str, v: str) -> WeightedGraph:
    if not g.has_edge(u, v):
        raise GraphError(f"no edge {u}-{v}")
    k = _key(u, v)
    return WeightedGraph(g.vertices, [e for e in g.edges() if _key(e[0], e[1]) != k])


def identify_vertices(g: WeightedGraph, i: str, j: str, label: str | None = None) -> WeightedGraph:
    """Merge ``j`` into ``i``; weights to each other vertex add up.

    The merged vertex takes the position of ``i`` and is labelled ``i`` unless
    ``label`` is given. Any edge between ``i`` and ``j`` disappears, and merged
    weights that cancel to zero leave no edge.
    """
    g.index(i)
    g.index(j)
    if i == j:
        raise GraphError("cannot identify a vertex with itself")
    merged = i if label is None else label
    verts = [merged if v == i else v for v in g.vertices if v != j]
    acc: dict[frozenset, Fraction] = {}
    for u, v, x in g.edges():
        u2 = merged if u in (i, j) else u
        v2 = merged if v in (i, j) else v
        if u2 == v2:
            continue
        k = _key(u2, v2)
        acc[k] = acc.get(k, Fraction(0)) + x
    pos = {v: n for n, v in enumerate(verts)}
    edges = []
    for k, x in acc.items():
        a, b = sorted(k, key=pos.__getitem__)
        edges.append((a, b, x))
    return WeightedGraph(verts, edges)


def contract_edge(g: WeightedGraph, u: str, v: str, label: str | None = None) -> WeightedGraph:
    if not g.has_edge(u, v):
        raise GraphError(f"no edge {u}-{v}")
    return identify_vertices(g, u, v, label)


# Symmetric matrix analysis


class Dominance(str, Enum):
    NOT_DOMINANT = "not_dominant"
    DOMINANT = "dominant"
    STRONGLY_DOMINANT = "strongly_dominant"


class Inertia(NamedTuple):
    positive: int
    negative: int
    zero: int


@dataclass(frozen=True)
class GershgorinDisk:
    center: Fraction
    radius: Fraction


def gershgorin_certificate(a: SymmetricRationalMatrix) -> list[GershgorinDisk]:
    out = []
    for i, row in enumerate(a.rows):
        r = sum((abs(x) for j, x in enumerate(row) if j != i), Fraction(0))
        out.append(GershgorinDisk(row[i], r))
    return out


def dominance(a: SymmetricRationalMatrix) -> Dominance:
    disks = gershgorin_certificate(a)
    if any(abs(d.center) < d.radius for d in disks):
        return Dominance.NOT_DOMINANT
    if any(abs(d.center) > d.radius for d in disks):
        return Dominance.STRONGLY_DOMINANT
    return Dominance.DOMINANT


def inertia(a: SymmetricRationalMatrix) -> Inertia:
    """Sylvester inertia by exact symmetric elimination.

    Pivots on a nonzero diagonal entry when one exists. Otherwise a nonzero
    off-diagonal pair ``(i, j)`` spans a hyperbolic plane, which contributes
    one positive and one negative direction and is eliminated as a 2x2 block.
    """
    m = [list(r) for r in a.rows]
    active = list(range(a.dim))
    pos = neg = 0
    while active:
        p = next((i for i in active if m[i][i] != 0), None)
        if p is not None:
            piv = m[p][p]
            if piv > 0:
                pos += 1
            else:
                neg += 1
            active.remove(p)
            for r in active:
                f = m[r][p] / piv
                if f:
                    for c in active:
                        m[r][c] -= f * m[p][c]
            continue
        pair = next(((i, j) for i in active for j in active if i < j and m[i][j] != 0), None)
        if pair is None:
            break
        i, j = pair
        b = m[i][j]
        pos += 1
        neg += 1
        active.remove(i)
        active.remove(j)
        # Schur complement against [[0, b], [b, 0]]
        upd = {
            (r, c): (m[r][i] * m[c][j] + m[r][j] * m[c][i]) / b for r in active for c in active
        }
        for (r, c), x in upd.items():
            m[r][c] -= x
    return Inertia(pos, neg, len(active))


def is_positive_definite(a: SymmetricRationalMatrix) -> bool:
    return inertia(a) == Inertia(a.dim, 0, 0)


def scale_row_col(a: SymmetricRationalMatrix, i: int, c) -> SymmetricRationalMatrix:
    """Congruence by ``D = diag(1, .., c, .., 1)`` with ``c`` at position ``i``."""
    c = as_fraction(c)
    if c == 0:
        raise ValueError("scaling by zero is not a congruence")
    if not 0 <= i < a.dim:
        raise IndexError(f"row {i} out of range")
    rows = a.to_lists()
    for k in range(a.dim):
        rows[i][k] *= c
    for k in range(a.dim):
        rows[k][i] *= c
    return SymmetricRationalMatrix(rows)


# Text format


class GraphFormatError(GraphError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_graph(text: str) -> WeightedGraph:
    """Read the ``graph`` / ``vertex`` / ``edge`` line format.

    Blank lines and lines starting with ``#`` are ignored. The vertex count in
    the header must match the number of ``vertex`` lines.
    """
    declared = None
    verts: list[str] = []
    edges: list[tuple[str, str, Fraction]] = []
    seen_edges: set[frozenset] = set()
    last = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        last = lineno
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        kw = parts[0]
        if declared is None:
            if kw != "graph" or len(parts) != 2 or not parts[1].isdigit():
                raise GraphFormatError("expected header 'graph <n>'", lineno)
            declared = int(parts[1])
            continue
        if kw == "graph":
            raise GraphFormatError("duplicate header", lineno)
        if kw == "vertex":
            if len(parts) != 2:
                raise GraphFormatError("expected 'vertex <label>'", lineno)
            if parts[1] in verts:
                raise GraphFormatError(f"duplicate vertex {parts[1]!r}", lineno)
            verts.append(parts[1])
        elif kw == "edge":
            if len(parts) != 4:
                raise GraphFormatError("expected 'edge <u> <v> <rational>'", lineno)
            u, v, w = parts[1:]
            for x in (u, v):
                if x not in verts:
                    raise GraphFormatError(f"unknown vertex {x!r}", lineno)
            if u == v:
                raise GraphFormatError("self-loop", lineno)
            if not _RATIONAL.match(w):
                raise GraphFormatError(f"malformed weight {w!r}", lineno)
            try:
                x = Fraction(w)
            except ZeroDivisionError:
                raise GraphFormatError(f"zero denominator in {w!r}", lineno) from None
            k = _key(u, v)
            if k in seen_edges:
                raise GraphFormatError(f"duplicate edge {u}-{v}", lineno)
            seen_edges.add(k)
            edges.append((u, v, x))
        else:
            raise GraphFormatError(f"unknown keyword {kw!r}", lineno)
    if declared is None:
        raise GraphFormatError("missing header 'graph <n>'", max(last, 1))
    if declared != len(verts):
        raise GraphFormatError(f"header declares {declared} vertices, found {len(verts)}", last)
    return WeightedGraph(verts, edges)


def format_graph(g: WeightedGraph) -> str:
    lines = [f"graph {g.order}"]
    lines += [f"vertex {v}" for v in g.vertices]
    lines += [f"edge {u} {v} {format_rational(x)}" for u, v, x in g.edges()]
    return "\n".join(lines) + "\n"
