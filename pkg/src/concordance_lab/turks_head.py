"""Goeritz graphs of the Turk's head knots Th(3, n) and the determinant lemma.

For odd ``n = 2k + 1`` the checkerboard surface of Th(3, n) has the graph
``gamma(n)`` on vertices ``a, b, c, v1..vk, w1..wk``. Identifying ``b`` and
``c`` gives the graph of the butterfly surface obtained by cutting along the
symmetry half-axis; adding a ``b``-``c`` edge of weight ``x`` interpolates
between the two.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import LaurentPolynomial, as_fraction, lucas, normalize_alexander
from .graphs import (
    Dominance,
    Inertia,
    SymmetricRationalMatrix,
    WeightedGraph,
    dominance,
    identify_vertices,
    inertia,
    is_positive_definite,
    reduced_laplacian,
    scale_row_col,
    spanning_tree_count,
)


class TurksHeadError(ValueError):
    pass


class LemmaCheckError(AssertionError):
    """A step of the determinant lemma failed; the graph convention is wrong."""


def in_family(n: int) -> bool:
    """Th(3, n) is a knot with the relevant symmetry iff n > 1 and 3 does not divide n."""
    return n > 1 and n % 3 != 0


@dataclass(frozen=True)
class TurksHeadIndex:
    n: int

    def __post_init__(self):
        n = self.n
        if not isinstance(n, int) or isinstance(n, bool):
            raise TurksHeadError(f"index must be an integer, got {n!r}")
        if n % 2 == 0 or n < 5 or n % 3 == 0:
            raise TurksHeadError(f"n = {n} must be odd, at least 5, and not divisible by 3")

    @property
    def k(self) -> int:
        return (self.n - 1) // 2


def _index(n) -> TurksHeadIndex:
    return n if isinstance(n, TurksHeadIndex) else TurksHeadIndex(n)


def vertex_labels(n) -> list[str]:
    k = _index(n).k
    return ["a", "b", "c"] + [f"v{i}" for i in range(1, k + 1)] + [f"w{i}" for i in range(1, k + 1)]


def build_gamma(n) -> WeightedGraph:
    k = _index(n).k
    edges = [("a", "b", 1), ("b", "v1", 1), ("b", "w1", 1)]
    for i in range(1, k):
        edges += [
            (f"v{i}", f"v{i + 1}", 1),
            (f"w{i}", f"w{i + 1}", 1),
            ("a", f"v{i}", 1),
            ("a", f"w{i}", 1),
        ]
    edges += [
        ("a", f"v{k}", 2),
        ("a", f"w{k}", 2),
        ("a", "c", -1),
        (f"v{k}", "c", 1),
        (f"w{k}", "c", 1),
    ]
    return WeightedGraph(vertex_labels(n), edges)


def build_gamma_bar(n) -> WeightedGraph:
    return identify_vertices(build_gamma(n), "b", "c")


def build_gamma_x(n, x) -> WeightedGraph:
    x = as_fraction(x)
    if x == 0:
        raise TurksHeadError("an edge of weight 0 is no edge")
    return build_gamma(n).with_edge("b", "c", x)


def _integral(q: Fraction, what: str) -> int:
    if q.denominator != 1:
        raise LemmaCheckError(f"{what} = {q} is not an integer")
    return q.numerator


def det_turks_head(n) -> int:
    return _integral(spanning_tree_count(build_gamma(n)), "T(gamma)")


def det_butterfly(n) -> int:
    return _integral(spanning_tree_count(build_gamma_bar(n)), "T(gamma_bar)")


# Published values for the restriction of L(gamma(-1/2); a) to c, b, v_k, w_k.
EXPECTED_RESTRICTION_BLOCK = SymmetricRationalMatrix(
    [
        [Fraction(1, 2), Fraction(1, 2), -1, -1],
        [Fraction(1, 2), Fraction(5, 2), 0, 0],
        [-1, 0, 4, 0],
        [-1, 0, 0, 4],
    ]
)


def reduced_at_a(n, x) -> SymmetricRationalMatrix:
    """``L(gamma_x(n); a)`` with rows ordered ``b, c, v1..vk, w1..wk``."""
    return reduced_laplacian(build_gamma_x(n, x), "a")


def restriction_block(n) -> SymmetricRationalMatrix:
    """Restriction of ``L(gamma(-1/2); a)`` to the vertices ``c, b, v_k, w_k``."""
    idx = _index(n)
    labels = vertex_labels(idx)[1:]
    m = reduced_at_a(idx, Fraction(-1, 2))
    keep = [labels.index(v) for v in ("c", "b", f"v{idx.k}", f"w{idx.k}")]
    return m.submatrix(keep)


@dataclass(frozen=True)
class DetIntReport:
    n: int
    det_J: int
    det_butterfly: int
    t_quarter: Fraction
    t_half: Fraction
    ratio_is_integer: bool
    inequality_holds: bool
    lucas_check: bool
    det_J_odd: bool
    det_butterfly_even: bool
    gamma_x_identity: bool
    restriction_block_matches: bool
    restriction_block_det: Fraction
    scaled_quarter_dominance: Dominance
    scaled_quarter_positive_diagonal: bool
    quarter_positive_definite: bool
    half_without_c_positive_definite: bool
    half_inertia: Inertia

    def as_dict(self) -> dict:
        from .exact import format_rational

        d = {}
        for name in self.__dataclass_fields__:
            v = getattr(self, name)
            if isinstance(v, Fraction):
                v = format_rational(v)
            elif isinstance(v, Dominance):
                v = v.value
            elif isinstance(v, Inertia):
                v = list(v)
            d[name] = v
        return d


def lemma_det_int_report(n) -> DetIntReport:
    """Recompute every step of the determinant lemma for one ``n``.

    Raises :class:`LemmaCheckError` if any step fails.
    """
    idx = _index(n)
    nn = idx.n
    det_j = det_turks_head(idx)
    det_b = det_butterfly(idx)
    quarter, half = Fraction(-1, 4), Fraction(-1, 2)
    l_quarter = reduced_at_a(idx, quarter)
    l_half = reduced_at_a(idx, half)
    t_quarter = l_quarter.det()
    t_half = l_half.det()

    labels = vertex_labels(idx)[1:]
    c_row = labels.index("c")
    scaled = scale_row_col(l_quarter, c_row, 3)
    dom = dominance(scaled)
    pos_diag = all(scaled[i, i] > 0 for i in range(scaled.dim))
    block = restriction_block(idx)

    report = DetIntReport(
        n=nn,
        det_J=det_j,
        det_butterfly=det_b,
        t_quarter=t_quarter,
        t_half=t_half,
        ratio_is_integer=det_b % det_j == 0,
        inequality_holds=2 * det_j < det_b < 4 * det_j,
        lucas_check=det_j == lucas(2 * nn) - 2,
        det_J_odd=det_j % 2 == 1,
        det_butterfly_even=det_b % 2 == 0,
        gamma_x_identity=(
            t_quarter == det_j + quarter * det_b and t_half == det_j + half * det_b
        ),
        restriction_block_matches=block == EXPECTED_RESTRICTION_BLOCK,
        restriction_block_det=block.det(),
        scaled_quarter_dominance=dom,
        scaled_quarter_positive_diagonal=pos_diag,
        quarter_positive_definite=is_positive_definite(scaled),
        half_without_c_positive_definite=is_positive_definite(l_half.delete(c_row)),
        half_inertia=inertia(l_half),
    )
    failures = [name for name, ok in _checks(report) if not ok]
    if failures:
        raise LemmaCheckError(f"n = {nn}: failed {', '.join(failures)}")
    return report


def _checks(r: DetIntReport):
    yield "lucas_check", r.lucas_check
    yield "det_J_odd", r.det_J_odd
    yield "det_butterfly_even", r.det_butterfly_even
    yield "t_quarter > 0", r.t_quarter > 0
    yield "t_half < 0", r.t_half < 0
    yield "inequality_holds", r.inequality_holds
    yield "ratio not integer", not r.ratio_is_integer
    yield "gamma_x_identity", r.gamma_x_identity
    yield "restriction_block_matches", r.restriction_block_matches
    yield "restriction_block_det < 0", r.restriction_block_det < 0
    yield "scaled_quarter strongly dominant", r.scaled_quarter_dominance is Dominance.STRONGLY_DOMINANT
    yield "scaled_quarter positive diagonal", r.scaled_quarter_positive_diagonal
    yield "quarter_positive_definite", r.quarter_positive_definite
    yield "half_without_c_positive_definite", r.half_without_c_positive_definite
    yield "half_inertia", r.half_inertia == Inertia(r.n, 1, 0)


def cha_alexander(m: int) -> LaurentPolynomial:
    """``-m^2 t^-1 + (2m^2 + 1) - m^2 t``; ``m = 1`` is the figure-eight knot."""
    if m < 1:
        raise ValueError("m must be positive")
    s = m * m
    return normalize_alexander(LaurentPolynomial({-1: -s, 0: 2 * s + 1, 1: -s}))
