"""Exact scalars, Laurent polynomials and rational functions.

Rational scalars are :class:`fractions.Fraction`. Everything here is immutable
and exact; floats never enter.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Union

Rational = Fraction
Scalar = Union[int, Fraction]

VARIABLES = ("t", "z", "u")


class AlgebraError(ValueError):
    """Base class for domain failures in exact algebra."""


class VariableMismatch(AlgebraError):
    pass


class InexactDivision(AlgebraError):
    """Raised when a supposedly exact polynomial division leaves a remainder."""


class NotSymmetric(AlgebraError):
    pass


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {x!r} to an exact rational")


def format_rational(q: Fraction) -> str:
    """``p/q`` form, or a bare integer when the denominator is 1."""
    q = as_fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class GaussianRational:
    """Exact complex number ``re + im*i`` with rational parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", as_fraction(self.re))
        object.__setattr__(self, "im", as_fraction(self.im))

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex numbers are not exact")
        return cls(as_fraction(x), Fraction(0))

    def __add__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.coerce(other))

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """Squared absolute value, always rational."""
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianRational":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * GaussianRational.coerce(other).inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = GaussianRational(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def exact_abs(self) -> Fraction:
        """|x| when it is rational; raises otherwise."""
        n = self.norm()
        p, q = math.isqrt(n.numerator), math.isqrt(n.denominator)
        if p * p != n.numerator or q * q != n.denominator:
            raise AlgebraError(f"|{self}| is irrational")
        return Fraction(p, q)

    def __str__(self):
        if self.im == 0:
            return format_rational(self.re)
        sign = "+" if self.im > 0 else "-"
        return f"{format_rational(self.re)} {sign} {format_rational(abs(self.im))}i"


I = GaussianRational(0, 1)


class LaurentPolynomial:
    """Sparse Laurent polynomial with exact rational coefficients.

    ``coeffs`` maps integer exponents to nonzero coefficients. The zero
    polynomial has an empty mapping.
    """

    __slots__ = ("_c", "var", "_hash")

    def __init__(self, coeffs: Mapping[int, Scalar] | None = None, var: str = "t"):
        if var not in VARIABLES:
            raise ValueError(f"unknown variable {var!r}")
        c = {}
        for e, v in (coeffs or {}).items():
            v = as_fraction(v)
            if v:
                c[int(e)] = v
        self._c = c
        self.var = var
        self._hash = None

    # construction helpers
    @classmethod
    def constant(cls, c: Scalar, var: str = "t") -> "LaurentPolynomial":
        return cls({0: c}, var)

    @classmethod
    def monomial(cls, e: int, c: Scalar = 1, var: str = "t") -> "LaurentPolynomial":
        return cls({e: c}, var)

    @classmethod
    def from_list(cls, coeffs: Iterable[Scalar], low: int = 0, var: str = "t"):
        """Coefficients listed from exponent ``low`` upward."""
        return cls({low + i: c for i, c in enumerate(coeffs)}, var)

    @classmethod
    def zero(cls, var: str = "t") -> "LaurentPolynomial":
        return cls({}, var)

    @classmethod
    def one(cls, var: str = "t") -> "LaurentPolynomial":
        return cls({0: 1}, var)

    # basic queries
    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._c)

    def __getitem__(self, e: int) -> Fraction:
        return self._c.get(e, Fraction(0))

    def items(self):
        return sorted(self._c.items())

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    @property
    def min_exp(self) -> int:
        if not self._c:
            raise AlgebraError("zero polynomial has no exponents")
        return min(self._c)

    @property
    def max_exp(self) -> int:
        if not self._c:
            raise AlgebraError("zero polynomial has no exponents")
        return max(self._c)

    def span(self) -> int:
        """Breadth ``max_exp - min_exp``; 0 for constants."""
        return self.max_exp - self.min_exp

    def degree(self) -> int:
        return self.max_exp

    def leading_coefficient(self) -> Fraction:
        return self._c[self.max_exp]

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._c.values())

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    # arithmetic
    def _check(self, other: "LaurentPolynomial") -> None:
        if self.var != other.var:
            raise VariableMismatch(f"variables differ: {self.var} vs {other.var}")

    def _coerce(self, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPolynomial.constant(other, self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, 0) + v
        return LaurentPolynomial(c, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({e: -v for e, v in self._c.items()}, self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c: dict[int, Fraction] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + v1 * v2
        return LaurentPolynomial(c, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise AlgebraError("only monomials have Laurent inverses")
            ((e, v),) = self._c.items()
            return LaurentPolynomial({-e * (-k): Fraction(1) / v ** (-k)}, self.var)
        result, base = LaurentPolynomial.one(self.var), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: Scalar) -> "LaurentPolynomial":
        c = as_fraction(c)
        return LaurentPolynomial({e: v * c for e, v in self._c.items()}, self.var)

    def shift(self, k: int) -> "LaurentPolynomial":
        """Multiply by ``var**k``."""
        return LaurentPolynomial({e + k: v for e, v in self._c.items()}, self.var)

    def reflect(self) -> "LaurentPolynomial":
        """Substitute ``var -> var**-1``."""
        return LaurentPolynomial({-e: v for e, v in self._c.items()}, self.var)

    def with_var(self, var: str) -> "LaurentPolynomial":
        return LaurentPolynomial(self._c, var)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPolynomial.constant(other, self.var)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.var == other.var and self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.var, frozenset(self._c.items())))
        return self._hash

    # division
    def divmod_poly(self, other: "LaurentPolynomial"):
        """Long division after shifting both to ordinary polynomials.

        Returns ``(q, r)`` with ``self = q*other + r`` where ``r`` has
        ``max_exp(r) - min_exp(other) < span(other)`` relative to the shifted
        divisor; used internally by gcd and exact division.
        """
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPolynomial.zero(self.var), LaurentPolynomial.zero(self.var)
        db = other.max_exp
        lead = other.leading_coefficient()
        low_b = other.min_exp
        rem = dict(self._c)
        q: dict[int, Fraction] = {}
        low_a = self.min_exp
        # stop once the remainder's top is below the divisor span above low_a
        while rem:
            top = max(rem)
            if top - db < low_a - low_b:
                break
            c = rem[top] / lead
            s = top - db
            q[s] = c
            for e, v in other._c.items():
                k = e + s
                nv = rem.get(k, 0) - c * v
                if nv:
                    rem[k] = nv
                else:
                    rem.pop(k, None)
        return LaurentPolynomial(q, self.var), LaurentPolynomial(rem, self.var)

    def exact_div(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        q, r = self.divmod_poly(other)
        if not r.is_zero():
            raise InexactDivision(f"({self}) is not divisible by ({other})")
        return q

    def divides(self, other: "LaurentPolynomial") -> bool:
        """True when ``self`` divides ``other`` in Q[var, var^-1]."""
        if self.is_zero():
            return other.is_zero()
        return other.divmod_poly(self)[1].is_zero()

    # evaluation
    def evaluate(self, x) -> GaussianRational | Fraction:
        """Exact value at a rational or Gaussian-rational point.

        Rational input gives a :class:`Fraction`; Gaussian input gives a
        :class:`GaussianRational`.
        """
        gaussian = isinstance(x, GaussianRational)
        if not gaussian:
            x = as_fraction(x)
        if x == 0 and self._c and self.min_exp < 0:
            raise ZeroDivisionError("negative exponents at zero")
        if gaussian:
            total = GaussianRational(0)
            for e, v in self._c.items():
                total = total + (x**e) * v
            return total
        return sum((v * x**e for e, v in self._c.items()), Fraction(0))

    __call__ = evaluate

    def evaluate_complex(self, x: complex) -> complex:
        """Floating evaluation, for root checks only."""
        return sum(complex(float(v)) * x**e for e, v in self._c.items())

    def is_symmetric(self) -> bool:
        return all(self._c.get(-e) == v for e, v in self._c.items())

    def primitive_integer(self) -> tuple[Fraction, "LaurentPolynomial"]:
        """Split into ``content * p`` with ``p`` integral and primitive.

        The sign is chosen so that ``p`` has a positive leading coefficient.
        """
        if self.is_zero():
            return Fraction(0), self
        den = math.lcm(*(v.denominator for v in self._c.values()))
        ints = [int(v * den) for v in self._c.values()]
        g = math.gcd(*ints)
        content = Fraction(g, den)
        if self.leading_coefficient() < 0:
            content = -content
        return content, self.scale(1 / content)

    # printing
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"LaurentPolynomial({format_poly(self)!r}, var={self.var!r})"


def format_poly(p: LaurentPolynomial) -> str:
    """Canonical text form, ascending exponents, e.g. ``-t^-1 + 3 - t``."""
    if p.is_zero():
        return "0"
    parts = []
    for i, (e, v) in enumerate(p.items()):
        neg = v < 0
        mag = -v if neg else v
        if e == 0:
            body = format_rational(mag)
        else:
            mono = p.var if e == 1 else f"{p.var}^{e}"
            body = mono if mag == 1 else f"{format_rational(mag)}{mono}"
        if i == 0:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)


class PolyParseError(AlgebraError):
    def __init__(self, message: str, position: int, text: str):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.position = position


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?P<coeff>\d+(?:/\d+)?)?\s*\*?\s*
        (?:(?P<var>[tzu])(?:\s*\^\s*(?P<exp>[+-]?\d+))?)?\s*""",
    re.VERBOSE,
)


def parse_poly(text: str, var: Optional[str] = None) -> LaurentPolynomial:
    """Parse a sum of terms ``[+-][coeff][var^exp]``.

    Whitespace is ignored between tokens; repeated exponents are summed.
    A single variable letter is allowed per expression.
    """
    s = text.strip()
    if not s:
        raise PolyParseError("empty polynomial", 0, text)
    coeffs: dict[int, Fraction] = {}
    pos = 0
    first = True
    seen_var = var
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise PolyParseError("unexpected character", pos, text)
        sign, coeff, v, exp = m.group("sign", "coeff", "var", "exp")
        if sign is None and not first:
            raise PolyParseError("missing '+' or '-' between terms", m.start(), text)
        if coeff is None and v is None:
            raise PolyParseError("empty term", m.start(), text)
        if v is not None:
            if seen_var is None:
                seen_var = v
            elif v != seen_var:
                raise PolyParseError(f"mixed variables {seen_var} and {v}", m.start("var"), text)
        try:
            c = Fraction(coeff) if coeff is not None else Fraction(1)
        except ZeroDivisionError:
            raise PolyParseError("zero denominator", m.start("coeff"), text) from None
        if sign == "-":
            c = -c
        e = 0 if v is None else (int(exp) if exp is not None else 1)
        coeffs[e] = coeffs.get(e, 0) + c
        pos = m.end()
        first = False
    return LaurentPolynomial(coeffs, seen_var or "t")


# Ring-level operations


def laurent_arith(a: LaurentPolynomial, b: LaurentPolynomial, op: str) -> LaurentPolynomial:
    a._check(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def laurent_divexact(a: LaurentPolynomial, b: LaurentPolynomial) -> LaurentPolynomial:
    return a.exact_div(b)


def _strip_units(p: LaurentPolynomial) -> LaurentPolynomial:
    return p.shift(-p.min_exp)


def _monic(p: LaurentPolynomial) -> LaurentPolynomial:
    return p.scale(1 / p.leading_coefficient())


def laurent_gcd(a: LaurentPolynomial, b: LaurentPolynomial) -> LaurentPolynomial:
    """Monic gcd over Q, normalized to minimal exponent 0."""
    a._check(b)
    if a.is_zero() and b.is_zero():
        raise AlgebraError("gcd(0, 0) is undefined")
    if a.is_zero():
        return _monic(_strip_units(b))
    if b.is_zero():
        return _monic(_strip_units(a))
    x, y = _strip_units(a), _strip_units(b)
    while not y.is_zero():
        r = x.divmod_poly(y)[1]
        x, y = y, (_strip_units(r) if not r.is_zero() else r)
    return _monic(_strip_units(x))


def laurent_eval(p: LaurentPolynomial, x) -> GaussianRational:
    return GaussianRational.coerce(p.evaluate(GaussianRational.coerce(x)))


def laurent_is_symmetric(p: LaurentPolynomial) -> bool:
    return p.is_symmetric()


def normalize_alexander(p: LaurentPolynomial) -> LaurentPolynomial:
    """Return the unit multiple ``±t^k p`` that is symmetric with value 1 at 1."""
    if p.is_zero():
        raise AlgebraError("zero is not an Alexander polynomial")
    lo, hi = p.min_exp, p.max_exp
    if (lo + hi) % 2:
        raise NotSymmetric(f"{p} has odd breadth; no unit multiple is symmetric")
    q = p.shift(-(lo + hi) // 2)
    if not q.is_symmetric():
        raise NotSymmetric(f"no unit multiple of {p} is symmetric")
    v = q.evaluate(1)
    if v == -1:
        q = -q
    elif v != 1:
        raise AlgebraError(f"value at 1 is {format_rational(v)}, not ±1")
    return q


def to_u_coordinates(p: LaurentPolynomial) -> LaurentPolynomial:
    """Rewrite a symmetric ``p(t)`` as ``q(u)`` with ``u = t + 1/t``."""
    if not p.is_symmetric():
        raise NotSymmetric(f"{p} is not symmetric")
    var = p.var
    rest = p
    out: dict[int, Fraction] = {}
    u = LaurentPolynomial({1: 1, -1: 1}, var)
    while not rest.is_zero():
        k = rest.max_exp
        c = rest[k]
        out[k] = c
        rest = rest - (u**k).scale(c)
    return LaurentPolynomial(out, "u")


def conway_from_alexander(delta: LaurentPolynomial) -> LaurentPolynomial:
    """Conway polynomial from a normalized Alexander polynomial.

    Uses ``z^2 = t - 2 + t^-1``, so ``u = t + t^-1 = z^2 + 2``.
    """
    if delta.is_zero() or not delta.is_symmetric() or delta.evaluate(1) != 1:
        raise AlgebraError(f"{delta} is not a normalized Alexander polynomial")
    q = to_u_coordinates(delta)
    u_in_z = LaurentPolynomial({2: 1, 0: 2}, "z")
    result = LaurentPolynomial.zero("z")
    for k, c in q.items():
        result = result + (u_in_z**k).scale(c)
    if result[0] != 1:
        raise AlgebraError("conway polynomial does not satisfy nabla(0) = 1")
    return result


def alexander_from_conway(nabla: LaurentPolynomial) -> LaurentPolynomial:
    """Inverse of :func:`conway_from_alexander` for even Conway polynomials."""
    if any(e % 2 or e < 0 for e in nabla.coeffs):
        raise AlgebraError("only polynomials in z^2 translate to Laurent polynomials in t")
    z2 = LaurentPolynomial({1: 1, 0: -2, -1: 1}, "t")
    result = LaurentPolynomial.zero("t")
    for e, c in nabla.items():
        result = result + (z2 ** (e // 2)).scale(c)
    return result


def laurent_square_root(p: LaurentPolynomial) -> Optional[LaurentPolynomial]:
    """Find integral ``f`` with ``p = ±t^k f^2``, or ``None``.

    The witness has minimal exponent 0 and positive leading coefficient.
    Coefficients are matched from the top degree down; ``None`` means no
    integral solution exists.
    """
    if p.is_zero():
        raise AlgebraError("square root of zero is not meaningful")
    if not p.is_integral():
        return None
    q = _strip_units(p)
    if q.leading_coefficient() < 0:
        q = -q
    deg = q.max_exp
    if deg % 2:
        return None
    m = deg // 2
    lead = int(q.leading_coefficient())
    r = math.isqrt(lead)
    if r * r != lead:
        return None
    b = [0] * (m + 1)
    b[m] = r
    for step in range(1, m + 1):
        target = int(q[2 * m - step])
        # known contributions: pairs (i, j), i + j = 2m - step, both in (m-step, m]
        known = 0
        for i in range(m - step + 1, m + 1):
            j = 2 * m - step - i
            if m - step < j <= m:
                known += b[i] * b[j]
        num = target - known
        if num % (2 * r):
            return None
        b[m - step] = num // (2 * r)
    f = LaurentPolynomial.from_list(b)
    f = f.with_var(p.var)
    if f * f != q:
        return None
    return f


def square_root_unit(p: LaurentPolynomial, f: LaurentPolynomial) -> tuple[int, int]:
    """Return ``(sign, k)`` with ``p == sign * t^k * f^2``; raises if none."""
    f2 = f * f
    k = p.min_exp - f2.min_exp
    shifted = f2.shift(k)
    if shifted == p:
        return 1, k
    if -shifted == p:
        return -1, k
    raise AlgebraError("witness does not square to the polynomial up to a unit")


@dataclass(frozen=True)
class RationalFunction:
    """Reduced quotient ``numerator / denominator`` in Q(var).

    Both parts are ordinary polynomials (no negative exponents), coprime in
    Q[var], integral with no common integer factor, and the denominator has a
    positive leading coefficient. Zero is ``0 / 1``. Powers of the variable
    are not units here, so ``1 / z`` stays ``1 / z``.
    """

    numerator: LaurentPolynomial
    denominator: LaurentPolynomial

    def __str__(self):
        if self.denominator == 1:
            return str(self.numerator)
        return f"({self.numerator}) / ({self.denominator})"

    @property
    def var(self) -> str:
        return self.numerator.var

    def is_polynomial(self) -> bool:
        return self.denominator.span() == 0 and self.denominator.min_exp == 0


def rational_function_reduce(num: LaurentPolynomial, den: LaurentPolynomial) -> RationalFunction:
    num._check(den)
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    var = num.var
    if num.is_zero():
        return RationalFunction(LaurentPolynomial.zero(var), LaurentPolynomial.one(var))
    # clear negative exponents and the common power of var
    k = min(num.min_exp, den.min_exp)
    n, d = num.shift(-k), den.shift(-k)
    g = laurent_gcd(n, d)
    n, d = n.exact_div(g), d.exact_div(g)
    cd, d = d.primitive_integer()
    n = n.scale(1 / cd)
    cn, n_prim = n.primitive_integer()
    # cn = a/b: fold b into the denominator, a into the numerator
    n = n_prim.scale(cn.numerator)
    d = d.scale(cn.denominator)
    return RationalFunction(n, d)


def lucas(n: int) -> int:
    if n < 0:
        raise ValueError("Lucas numbers are defined here for n >= 0")
    a, b = 2, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def is_perfect_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n
