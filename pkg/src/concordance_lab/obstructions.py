"""Squareness obstructions, moth-polynomial algebra and independence certificates."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence

from .braids import alexander_turks_head
from .exact import (
    LaurentPolynomial,
    RationalFunction,
    conway_from_alexander,
    is_perfect_square,
    laurent_gcd,
    laurent_square_root,
    lucas,
    rational_function_reduce,
)
from .turks_head import DetIntReport, TurksHeadIndex, in_family, lemma_det_int_report

Z = LaurentPolynomial.monomial(1, var="z")


class ObstructionError(ValueError):
    pass


@dataclass(frozen=True)
class ObstructionVerdict:
    knot: str
    delta_is_square: bool
    det: int
    det_is_square: bool
    witness: Optional[LaurentPolynomial] = None

    @property
    def obstructed(self) -> bool:
        """True when the knot cannot be equivariantly Q-slice."""
        return not self.delta_is_square


def fox_milnor_test(delta: LaurentPolynomial, knot: str = "") -> ObstructionVerdict:
    """Test whether a normalized Alexander polynomial is a square up to units.

    A knot that is equivariantly rationally slice has square Alexander
    polynomial, so a ``False`` here obstructs that. The determinant test is
    the weaker necessary condition ``|Delta(-1)|`` a perfect square.
    """
    if delta.var != "t" or delta.is_zero() or not delta.is_symmetric() or delta.evaluate(1) != 1:
        raise ObstructionError(f"{delta} is not a normalized Alexander polynomial")
    root = laurent_square_root(delta)
    det = abs(delta.evaluate(-1))
    if det.denominator != 1:
        raise ObstructionError("determinant is not an integer")
    d = det.numerator
    return ObstructionVerdict(
        knot=knot,
        delta_is_square=root is not None,
        det=d,
        det_is_square=is_perfect_square(d),
        witness=root,
    )


def det_square_test_even_turks(n: int) -> bool:
    """Is ``det Th(3, n) = L_{2n} - 2`` a perfect square, for even ``n`` in the family?"""
    if n % 2 or not in_family(n):
        raise ObstructionError(f"n = {n} must be even, > 1 and not divisible by 3")
    return is_perfect_square(lucas(2 * n) - 2)


def _check_conway_pair(conway_k: LaurentPolynomial, conway_l0: LaurentPolynomial) -> None:
    if conway_k.var != "z" or conway_l0.var != "z":
        raise ObstructionError("Conway polynomials must be in z")
    if conway_k[0] != 1:
        raise ObstructionError("the knot's Conway polynomial must have constant term 1")
    if not conway_l0.is_zero() and (conway_l0.min_exp < 1):
        raise ObstructionError("the 2-component link's Conway polynomial must be divisible by z")


@dataclass(frozen=True)
class MothPolynomial:
    value: RationalFunction

    @property
    def numerator(self) -> LaurentPolynomial:
        return self.value.numerator

    @property
    def denominator(self) -> LaurentPolynomial:
        return self.value.denominator

    def __str__(self):
        return str(self.value)


def moth_polynomial(conway_k: LaurentPolynomial, conway_l0: LaurentPolynomial) -> MothPolynomial:
    """``conway_l0 / (z * conway_k)`` in lowest terms."""
    _check_conway_pair(conway_k, conway_l0)
    return MothPolynomial(rational_function_reduce(conway_l0, Z * conway_k))


def butterfly_conway(conway_k: LaurentPolynomial, conway_l0: LaurentPolynomial, p: int) -> LaurentPolynomial:
    """Conway polynomial of the p-butterfly link: each extra twist adds ``z * conway_k``."""
    _check_conway_pair(conway_k, conway_l0)
    return conway_l0 + (Z * conway_k).scale(p)


@dataclass(frozen=True)
class EtaDenominatorVerdict:
    det_knot: int
    det_link: int
    conclusive: bool
    conclusion: str


def eta_denominator_obstruction(conway_k: LaurentPolynomial, det_k: int, det_lp: int) -> EtaDenominatorVerdict:
    """Certify a nonconstant moth denominator from determinants alone.

    If ``det_k`` does not divide ``det_lp`` then the Conway polynomial of the
    knot does not divide that of any butterfly link, so the reduced moth
    polynomial has a denominator of positive degree dividing ``conway_k``.
    """
    if det_k < 0 or det_lp < 0:
        raise ObstructionError("determinants are nonnegative")
    if conway_k[0] != 1:
        raise ObstructionError("the knot's Conway polynomial must have constant term 1")
    if det_k == 0:
        fires = det_lp != 0
    else:
        fires = det_lp % det_k != 0
    if fires:
        msg = f"denominator of the moth polynomial is nonconstant and divides {conway_k}"
    else:
        msg = "inconclusive: det(K) divides det(L)"
    return EtaDenominatorVerdict(det_k, det_lp, fires, msg)


@dataclass(frozen=True)
class IndependenceCertificate:
    family: tuple[int, ...]
    pairwise_coprime: bool
    alexander_pairwise_coprime: bool
    det_int_reports: tuple[DetIntReport, ...]
    det_int_ok: bool
    eta_denominators_nonconstant: bool
    non_coprime_pairs: tuple[tuple[int, int], ...] = ()
    alexander_common_factors: tuple[tuple[int, int, str], ...] = ()
    failures: tuple[str, ...] = field(default=())

    @property
    def conclusion(self) -> bool:
        return self.pairwise_coprime and self.alexander_pairwise_coprime and self.det_int_ok


def independence_certificate(family: Sequence[int]) -> IndependenceCertificate:
    """Check the hypotheses under which the moth polynomials of Th(3, n) are independent.

    (a) the indices are pairwise coprime (distinct members, read as m != n);
    (b) the Alexander polynomials are pairwise coprime;
    (c) the determinant lemma holds for every member, which forces each moth
    polynomial to have a nonconstant denominator dividing its own Conway
    polynomial.
    """
    fam = tuple(int(n) for n in family)
    if not fam:
        raise ObstructionError("empty family")
    for n in fam:
        TurksHeadIndex(n)
    if len(set(fam)) != len(fam):
        raise ObstructionError("family members must be distinct")

    bad_pairs = tuple((p, q) for p, q in combinations(fam, 2) if math.gcd(p, q) != 1)
    alex = {n: alexander_turks_head(n) for n in fam}
    common = []
    for p, q in combinations(fam, 2):
        g = laurent_gcd(alex[p], alex[q])
        if g != 1:
            common.append((p, q, str(g)))

    reports = []
    failures = []
    for n in fam:
        try:
            reports.append(lemma_det_int_report(n))
        except AssertionError as exc:
            failures.append(str(exc))
    det_ok = not failures and len(reports) == len(fam)
    eta_ok = det_ok and all(
        eta_denominator_obstruction(
            conway_from_alexander(alex[r.n]), r.det_J, r.det_butterfly
        ).conclusive
        for r in reports
    )
    return IndependenceCertificate(
        family=fam,
        pairwise_coprime=not bad_pairs,
        alexander_pairwise_coprime=not common,
        det_int_reports=tuple(reports),
        det_int_ok=det_ok,
        eta_denominators_nonconstant=eta_ok,
        non_coprime_pairs=bad_pairs,
        alexander_common_factors=tuple(common),
        failures=tuple(failures),
    )


def connected_sum_square_test(
    summands: Sequence[tuple[LaurentPolynomial, int]],
) -> tuple[bool, tuple[int, ...]]:
    """Squareness of ``prod Delta_i^|a_i|`` and the parity vector ``a_i mod 2``.

    The summands must be pairwise coprime. Squareness is decided by actually
    extracting a square root of the product, not from the parities.
    """
    polys = [p for p, _ in summands]
    for (i, p), (j, q) in combinations(enumerate(polys), 2):
        if laurent_gcd(p, q) != 1:
            raise ObstructionError(f"summands {i} and {j} share a factor")
    product = LaurentPolynomial.one()
    for p, a in summands:
        product = product * p ** abs(int(a))
    parity = tuple(abs(int(a)) % 2 for _, a in summands)
    return laurent_square_root(product) is not None, parity
