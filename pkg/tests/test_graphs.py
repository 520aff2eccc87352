import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from concordance_lab.graphs import (
    BruteForceBoundExceeded,
    Dominance,
    GraphError,
    GraphFormatError,
    Inertia,
    SymmetricRationalMatrix as M,
    WeightedGraph,
    contract_edge,
    delete_edge,
    det,
    dominance,
    format_graph,
    gershgorin_certificate,
    identify_vertices,
    inertia,
    is_positive_definite,
    laplacian,
    parse_graph,
    reduced_laplacian,
    scale_row_col,
    spanning_tree_count,
    spanning_tree_count_bruteforce,
)

from conftest import random_graph, random_rational

TRIANGLE = WeightedGraph("abc", [("a", "b", 1), ("b", "c", 1), ("a", "c", 1)])
PATH = WeightedGraph("abc", [("a", "b", 1), ("b", "c", 1)])
HALF = WeightedGraph("ab", [("a", "b", Fraction(-1, 2))])


def _sign_changes(coeffs):
    signs = [c > 0 for c in coeffs if c != 0]
    return sum(a != b for a, b in zip(signs, signs[1:]))


def sympy_inertia(a: M):
    """Oracle: Descartes' rule on the characteristic polynomial.

    The polynomial is real-rooted for symmetric matrices, so sign changes
    count positive roots exactly; ``p(-x)`` gives the negative ones.
    """
    n = a.dim
    if n == 0:
        return Inertia(0, 0, 0)
    x = sympy.Symbol("x")
    mat = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in r] for r in a.rows])
    cp = mat.charpoly(x)
    coeffs = cp.all_coeffs()  # highest degree first
    zero = next(k for k, c in enumerate(reversed(coeffs)) if c != 0)
    pos = _sign_changes(coeffs)
    neg = _sign_changes([c * (-1) ** (n - k) for k, c in enumerate(coeffs)])
    return Inertia(pos, neg, zero)


class TestWeightedGraph:
    def test_zero_weights_dropped(self):
        g = WeightedGraph("ab", [("a", "b", 0)])
        assert g.edges() == []

    @pytest.mark.parametrize(
        "verts, edges",
        [("aa", []), ("ab", [("a", "a", 1)]), ("ab", [("a", "c", 1)]), ("ab", [("a", "b", 1), ("b", "a", 2)])],
    )
    def test_invalid(self, verts, edges):
        with pytest.raises(GraphError):
            WeightedGraph(verts, edges)


class TestLaplacian:
    def test_triangle(self):
        assert laplacian(TRIANGLE) == M([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]])

    def test_single_negative_edge(self):
        h = Fraction(1, 2)
        assert laplacian(HALF) == M([[-h, h], [h, -h]])

    def test_edgeless(self):
        assert laplacian(WeightedGraph("xyz")) == M([[0] * 3] * 3)

    def test_reduced(self):
        for v in "abc":
            assert reduced_laplacian(TRIANGLE, v) == M([[2, -1], [-1, 2]])
        assert reduced_laplacian(PATH, "b") == M([[1, 0], [0, 1]])

    def test_unknown_vertex(self):
        with pytest.raises(GraphError):
            reduced_laplacian(TRIANGLE, "q")

    @settings(max_examples=50)
    @given(st.randoms(use_true_random=False))
    def test_row_sums_zero(self, rng):
        g = random_graph(rng)
        for row in laplacian(g).rows:
            assert sum(row) == 0


class TestSpanningTrees:
    def test_examples(self):
        assert spanning_tree_count(TRIANGLE) == 3
        assert spanning_tree_count(WeightedGraph("ab")) == 0
        assert spanning_tree_count(HALF) == Fraction(-1, 2)
        assert spanning_tree_count(WeightedGraph("a")) == 1

    def test_bruteforce_examples(self):
        assert spanning_tree_count_bruteforce(TRIANGLE) == 3
        c4 = WeightedGraph("abcd", [("a", "b", 1), ("b", "c", 1), ("c", "d", 1), ("d", "a", 1)])
        assert spanning_tree_count_bruteforce(c4) == 4
        assert spanning_tree_count_bruteforce(HALF) == Fraction(-1, 2)

    def test_bound(self):
        g = WeightedGraph([str(i) for i in range(11)])
        with pytest.raises(BruteForceBoundExceeded):
            spanning_tree_count_bruteforce(g)
        assert spanning_tree_count_bruteforce(g, bound=11) == 0

    def test_bound_from_environment(self, monkeypatch):
        g = WeightedGraph([str(i) for i in range(4)])
        monkeypatch.setenv("CONCORDANCE_LAB_BRUTEFORCE_BOUND", "3")
        with pytest.raises(BruteForceBoundExceeded):
            spanning_tree_count_bruteforce(g)

    @settings(max_examples=60, deadline=None)
    @given(st.randoms(use_true_random=False))
    def test_matrix_tree_and_pivot_independence(self, rng):
        g = random_graph(rng, max_vertices=6)
        expected = spanning_tree_count_bruteforce(g)
        for v in g.vertices:
            assert spanning_tree_count(g, v) == expected

    @settings(max_examples=60, deadline=None)
    @given(st.randoms(use_true_random=False))
    def test_deletion_contraction(self, rng):
        g = random_graph(rng, max_vertices=6)
        t = spanning_tree_count(g)
        for u, v, w in g.edges():
            assert t == spanning_tree_count(delete_edge(g, u, v)) + w * spanning_tree_count(contract_edge(g, u, v))

    def test_det_against_sympy(self):
        rng = random.Random(5)
        for _ in range(30):
            n = rng.randint(1, 5)
            a = [[random_rational(rng) for _ in range(n)] for _ in range(n)]
            ref = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in a]).det()
            assert det(a) == Fraction(int(sympy.numer(ref)), int(sympy.denom(ref)))


class TestDeleteContract:
    def test_delete(self):
        assert delete_edge(TRIANGLE, "a", "c") == PATH
        assert delete_edge(HALF, "a", "b").edges() == []
        assert spanning_tree_count(delete_edge(TRIANGLE, "a", "b")) == 1
        with pytest.raises(GraphError):
            delete_edge(PATH, "a", "c")

    def test_contract(self):
        g = contract_edge(TRIANGLE, "a", "b")
        assert g.vertices == ("a", "c") and g.weight("a", "c") == 2
        g = contract_edge(PATH, "a", "b")
        assert g.edges() == [("a", "c", 1)]
        with pytest.raises(GraphError):
            contract_edge(PATH, "a", "c")

    def test_cancellation(self):
        g = WeightedGraph("ijh", [("i", "j", 1), ("i", "h", 2), ("j", "h", -2)])
        assert contract_edge(g, "i", "j").edges() == []

    def test_identify(self):
        g = identify_vertices(PATH, "a", "c")
        assert g.edges() == [("a", "b", 2)]
        assert identify_vertices(WeightedGraph("pq"), "p", "q").vertices == ("p",)
        with pytest.raises(GraphError):
            identify_vertices(PATH, "a", "a")

    @settings(max_examples=40)
    @given(st.randoms(use_true_random=False))
    def test_identify_sums_rows(self, rng):
        g = random_graph(rng)
        if g.order < 2:
            return
        i, j = rng.sample(range(g.order), 2)
        vi, vj = g.vertices[i], g.vertices[j]
        merged = laplacian(identify_vertices(g, vi, vj))
        full = laplacian(g).to_lists()
        # add row/col j into i, drop j
        for c in range(g.order):
            full[i][c] += full[j][c]
        for r in range(g.order):
            full[r][i] += full[r][j]
        keep = [k for k in range(g.order) if k != j]
        # the i-j edge contributes w - w - w + w = 0 to the merged diagonal
        assert merged.to_lists() == [[full[r][c] for c in keep] for r in keep]


class TestMatrixAnalysis:
    def test_gershgorin(self):
        disks = gershgorin_certificate(M([[2, 1], [1, 2]]))
        assert [(d.center, d.radius) for d in disks] == [(2, 1), (2, 1)]
        assert all(d.radius == 0 for d in gershgorin_certificate(M([[3, 0], [0, -1]])))
        disks = gershgorin_certificate(M([[1, -3], [-3, 0]]))
        assert [(d.center, d.radius) for d in disks] == [(1, 3), (0, 3)]

    def test_dominance(self):
        assert dominance(M([[2, 1], [1, 2]])) is Dominance.STRONGLY_DOMINANT
        assert dominance(M([[1, 1], [1, 1]])) is Dominance.DOMINANT
        assert dominance(M([[0, 1], [1, 0]])) is Dominance.NOT_DOMINANT
        assert dominance(M([[-3, 1], [1, 2]])) is Dominance.STRONGLY_DOMINANT

    def test_inertia_examples(self):
        assert inertia(M([[1, 0], [0, -1]])) == Inertia(1, 1, 0)
        assert inertia(M([[0] * 4] * 4)) == Inertia(0, 0, 4)
        assert inertia(M([[0, 1], [1, 0]])) == Inertia(1, 1, 0)
        assert inertia(M([[0, 1, 0], [1, 0, 2], [0, 2, 0]])) == Inertia(1, 1, 1)
        assert inertia(M([])) == Inertia(0, 0, 0)

    def test_positive_definite(self):
        assert is_positive_definite(M([[2, 1], [1, 2]]))
        assert not is_positive_definite(M([[1, 2], [2, 1]]))

    @settings(max_examples=40, deadline=None)
    @given(st.randoms(use_true_random=False))
    def test_connected_positive_graph_reduced_laplacian_pd(self, rng):
        n = rng.randint(2, 7)
        verts = [str(i) for i in range(n)]
        edges = [(verts[i - 1], verts[i], rng.randint(1, 5)) for i in range(1, n)]
        for i in range(n):
            for j in range(i + 2, n):
                if rng.random() < 0.4:
                    edges.append((verts[i], verts[j], Fraction(rng.randint(1, 9), rng.randint(1, 4))))
        g = WeightedGraph(verts, edges)
        for v in verts:
            a = reduced_laplacian(g, v)
            assert is_positive_definite(a)
            assert dominance(a) is Dominance.STRONGLY_DOMINANT

    def test_scale(self):
        a = M([[2, 1], [1, 2]])
        assert scale_row_col(a, 0, 1) == a
        assert scale_row_col(M([[1, 0], [0, 1]]), 0, 3) == M([[9, 0], [0, 1]])
        with pytest.raises(ValueError):
            scale_row_col(a, 0, 0)

    @staticmethod
    def _random_symmetric(rng, n, zero_diag=False):
        rows = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                x = Fraction(0) if (zero_diag and i == j) else random_rational(rng)
                if rng.random() < 0.3:
                    x = Fraction(0)
                rows[i][j] = rows[j][i] = x
        return M(rows)

    def test_inertia_against_eigenvalues(self):
        rng = random.Random(11)
        for trial in range(40):
            a = self._random_symmetric(rng, rng.randint(1, 5), zero_diag=trial % 3 == 0)
            assert inertia(a) == sympy_inertia(a)

    @settings(max_examples=60, deadline=None)
    @given(st.randoms(use_true_random=False))
    def test_inertia_congruence_invariant(self, rng):
        n = rng.randint(1, 5)
        a = self._random_symmetric(rng, n, zero_diag=rng.random() < 0.3)
        base = inertia(a)
        i = rng.randrange(n)
        assert inertia(scale_row_col(a, i, random_rational(rng) or 1)) == base
        # unimodular S: product of elementary row additions and a swap
        s = [[int(r == c) for c in range(n)] for r in range(n)]
        for _ in range(4):
            r, c = rng.randrange(n), rng.randrange(n)
            if r != c:
                k = rng.randint(-2, 2)
                s[r] = [x + k * y for x, y in zip(s[r], s[c])]
        if n > 1:
            s[0], s[1] = s[1], s[0]
        assert inertia(a.congruence(s)) == base

    @settings(max_examples=60, deadline=None)
    @given(st.randoms(use_true_random=False))
    def test_gershgorin_corollary(self, rng):
        a = self._random_symmetric(rng, rng.randint(1, 5))
        if dominance(a) is Dominance.STRONGLY_DOMINANT and all(a[i, i] > 0 for i in range(a.dim)):
            # the statement only needs irreducibility; check it where it applies
            if sympy_inertia(a) == Inertia(a.dim, 0, 0):
                assert is_positive_definite(a)


class TestGraphFormat:
    TEXT = """# sample
graph 3
vertex a
vertex b
vertex c
edge a b 1
edge b c -1/2
"""

    def test_parse(self):
        g = parse_graph(self.TEXT)
        assert g.vertices == ("a", "b", "c")
        assert g.weight("b", "c") == Fraction(-1, 2)

    @settings(max_examples=50)
    @given(st.randoms(use_true_random=False))
    def test_round_trip(self, rng):
        g = random_graph(rng)
        text = format_graph(g)
        assert parse_graph(text) == g
        assert format_graph(parse_graph(text)) == text

    @pytest.mark.parametrize(
        "text, line",
        [
            ("vertex a\n", 1),
            ("graph 2\nvertex a\n", 2),
            ("graph 1\nvertex a\nedge a b 1\n", 3),
            ("graph 2\nvertex a\nvertex b\nedge a b 1.5\n", 4),
            ("graph 2\nvertex a\nvertex b\nedge a b 1/0\n", 4),
            ("graph 2\nvertex a\nvertex b\nedge a b 1\nedge b a 2\n", 5),
            ("graph 1\nvertex a\nloop a\n", 3),
            ("graph 2\nvertex a\nvertex a\n", 3),
            ("", 1),
        ],
    )
    def test_rejects_with_line(self, text, line):
        with pytest.raises(GraphFormatError) as info:
            parse_graph(text)
        assert info.value.line == line
