"""Braid words, the reduced Burau representation and Alexander polynomials."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

from .exact import (
    AlgebraError,
    LaurentPolynomial,
    conway_from_alexander,
    normalize_alexander,
)
from .turks_head import in_family

T = LaurentPolynomial.monomial(1)
ONE = LaurentPolynomial.one()
ZERO = LaurentPolynomial.zero()


class BraidError(ValueError):
    pass


class BraidParseError(BraidError):
    def __init__(self, message: str, position: int, text: str):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.position = position


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        if self.strands < 2:
            raise BraidError("a braid needs at least 2 strands")
        for x in self.letters:
            if x == 0 or abs(x) >= self.strands:
                raise BraidError(f"letter {x} invalid on {self.strands} strands")

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.strands != other.strands:
            raise BraidError("strand counts differ")
        return BraidWord(self.strands, self.letters + other.letters)

    def __pow__(self, k: int) -> "BraidWord":
        if k < 0:
            return self.inverse() ** (-k)
        return BraidWord(self.strands, self.letters * k)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-x for x in reversed(self.letters)))

    def permutation(self) -> tuple[int, ...]:
        """Image of each strand position after the braid, 0-based."""
        perm = list(range(self.strands))
        for x in self.letters:
            i = abs(x) - 1
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
        return tuple(perm)

    def closure_components(self) -> int:
        perm = self.permutation()
        seen = [False] * self.strands
        count = 0
        for s in range(self.strands):
            if not seen[s]:
                count += 1
                while not seen[s]:
                    seen[s] = True
                    s = perm[s]
        return count

    def closure_is_knot(self) -> bool:
        return self.closure_components() == 1

    def __str__(self):
        return f"strands={self.strands} " + " ".join(str(x) for x in self.letters)


def parse_braid(text: str) -> BraidWord:
    """Parse ``[strands=k] l1 l2 ...`` with signed generator indices."""
    strands = 3
    letters = []
    pos = 0
    tokens = []
    for tok in text.split():
        pos = text.index(tok, pos)
        tokens.append((pos, tok))
        pos += len(tok)
    for n, (pos, tok) in enumerate(tokens):
        if tok.startswith("strands="):
            if n != 0:
                raise BraidParseError("strands= must come first", pos, text)
            val = tok[len("strands="):]
            if not val.isdigit():
                raise BraidParseError(f"bad strand count {val!r}", pos, text)
            strands = int(val)
            if strands < 2:
                raise BraidParseError("need at least 2 strands", pos, text)
            continue
        try:
            x = int(tok)
        except ValueError:
            raise BraidParseError(f"malformed token {tok!r}", pos, text) from None
        if x == 0:
            raise BraidParseError("letter 0 is not a generator", pos, text)
        letters.append((pos, x))
    for pos, x in letters:
        if abs(x) >= strands:
            raise BraidParseError(f"letter {x} needs more than {strands} strands", pos, text)
    return BraidWord(strands, tuple(x for _, x in letters))


def turks_head_braid(n: int) -> BraidWord:
    """``(sigma_1 sigma_2^-1)^n`` on three strands."""
    return BraidWord(3, (1, -2) * n)


class LaurentMatrix:
    """Small dense square matrix over Z[t, t^-1]."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence[LaurentPolynomial]]):
        self.rows = tuple(tuple(r) for r in rows)
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise ValueError("matrix must be square")

    @classmethod
    def identity(cls, n: int) -> "LaurentMatrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __mul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        n = self.dim
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = ZERO
                for x, y in zip(r, c):
                    if x and y:
                        acc = acc + x * y
                row.append(acc)
            out.append(row)
        return LaurentMatrix(out) if n else self

    def __sub__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        return LaurentMatrix(
            [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)]
        )

    def __eq__(self, other):
        return isinstance(other, LaurentMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def trace(self) -> LaurentPolynomial:
        acc = ZERO
        for i in range(self.dim):
            acc = acc + self.rows[i][i]
        return acc

    def det(self) -> LaurentPolynomial:
        """Fraction-free elimination over the Laurent ring, dividing exactly."""
        n = self.dim
        if n == 0:
            return ONE
        a = [list(r) for r in self.rows]
        sign = 1
        prev = ONE
        for k in range(n - 1):
            if a[k][k].is_zero():
                for r in range(k + 1, n):
                    if not a[r][k].is_zero():
                        a[k], a[r] = a[r], a[k]
                        sign = -sign
                        break
                else:
                    return ZERO
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).exact_div(prev)
                a[i][k] = ZERO
            prev = a[k][k]
        return a[n - 1][n - 1].scale(sign)

    def __repr__(self):
        return "LaurentMatrix([" + "; ".join(", ".join(map(str, r)) for r in self.rows) + "])"


def burau_generator(strands: int, letter: int) -> LaurentMatrix:
    """Reduced Burau image of ``sigma_i^{+-1}`` as an ``(strands-1)`` square matrix.

    ``sigma_i`` acts as the identity except on rows ``i-1, i, i+1`` (1-based,
    clipped to the matrix), where it is ``[[1, t, 0], [0, -t, 0], [0, 1, 1]]``.
    """
    n = strands - 1
    i = abs(letter)
    tinv = LaurentPolynomial.monomial(-1)
    rows = [[ONE if r == c else ZERO for c in range(n)] for r in range(n)]
    p = i - 1  # 0-based diagonal position of the -t entry
    if letter > 0:
        rows[p][p] = -T
        if p - 1 >= 0:
            rows[p - 1][p] = T
        if p + 1 < n:
            rows[p + 1][p] = ONE
    else:
        rows[p][p] = -tinv
        if p - 1 >= 0:
            rows[p - 1][p] = ONE
        if p + 1 < n:
            rows[p + 1][p] = tinv
    return LaurentMatrix(rows)


def reduced_burau(w: BraidWord) -> LaurentMatrix:
    m = LaurentMatrix.identity(w.strands - 1)
    for x in w.letters:
        m = m * burau_generator(w.strands, x)
    return m


def _strand_quotient(strands: int) -> LaurentPolynomial:
    return LaurentPolynomial.from_list([1] * strands)


def alexander_of_closure(w: BraidWord) -> LaurentPolynomial:
    """Normalized Alexander polynomial of the closure of ``w``.

    ``det(B(w) - I)`` divided by ``1 + t + ... + t^(strands-1)``.
    """
    if not w.closure_is_knot():
        raise BraidError(f"closure of {w} has {w.closure_components()} components, not 1")
    m = reduced_burau(w) - LaurentMatrix.identity(w.strands - 1)
    return normalize_alexander(m.det().exact_div(_strand_quotient(w.strands)))


def _check_family(n: int) -> None:
    if not in_family(n):
        raise BraidError(f"n = {n} is not in the family (need n > 1, n not divisible by 3)")


def alexander_turks_head(n: int) -> LaurentPolynomial:
    """Alexander polynomial of Th(3, n) through the trace recursion.

    With ``M = B(sigma_1 sigma_2^-1)`` and ``det M = 1``,
    ``det(M^n - I) = 2 - tr M^n`` and ``tr M^(j+1) = tr M * tr M^j - tr M^(j-1)``.
    """
    _check_family(n)
    m = reduced_burau(BraidWord(3, (1, -2)))
    if m.det() != ONE:
        raise AlgebraError("det B(sigma_1 sigma_2^-1) != 1")
    s = m.trace()
    prev, cur = LaurentPolynomial.constant(2), s
    for _ in range(n - 1):
        prev, cur = cur, s * cur - prev
    return normalize_alexander((2 - cur).exact_div(_strand_quotient(3)))


def turks_head_roots(n: int) -> list[complex]:
    """Closed-form roots of the Alexander polynomial of Th(3, n), as floats."""
    _check_family(n)
    out = []
    for k in range(1, n // 2 + 1):
        c = 2 * math.cos(2 * k * math.pi / n) - 1
        disc = cmath.sqrt(c * c - 4)
        out.append(-0.5 * (c + disc))
        out.append(-0.5 * (c - disc))
    return out


def conway_turks_head(n: int) -> LaurentPolynomial:
    return conway_from_alexander(alexander_turks_head(n))
