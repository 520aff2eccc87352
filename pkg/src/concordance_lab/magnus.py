"""Free-group words, truncated Magnus expansions and Milnor invariants of string links.

The Magnus embedding sends ``x_i`` to ``1 + X_i`` and ``x_i^-1`` to
``1 - X_i + X_i^2 - ...`` in non-commuting variables ``X_1 .. X_m``. For a
string link with longitudes ``l_j`` written in the meridians, the Milnor
invariant ``mu(i_1 .. i_r j)`` is the coefficient of ``X_{i_1} .. X_{i_r}`` in
the expansion of ``l_j``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from . import kernels

DEFAULT_DEGREE = 8


class MagnusError(ValueError):
    pass


def free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


@dataclass(frozen=True)
class FreeWord:
    generators: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.generators < 1:
            raise MagnusError("need at least one generator")
        letters = tuple(int(x) for x in self.letters)
        for x in letters:
            if x == 0 or abs(x) > self.generators:
                raise MagnusError(f"letter {x} out of range for {self.generators} generators")
        object.__setattr__(self, "letters", free_reduce(letters))

    @classmethod
    def generator(cls, m: int, i: int) -> "FreeWord":
        return cls(m, (i,))

    def _same(self, other: "FreeWord") -> None:
        if self.generators != other.generators:
            raise MagnusError("generator counts differ")

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        self._same(other)
        return FreeWord(self.generators, self.letters + other.letters)

    def inverse(self) -> "FreeWord":
        return FreeWord(self.generators, tuple(-x for x in reversed(self.letters)))

    def __pow__(self, k: int) -> "FreeWord":
        if k < 0:
            return self.inverse() ** (-k)
        return FreeWord(self.generators, self.letters * k)

    def __len__(self):
        return len(self.letters)

    def exponent_sum(self, i: int) -> int:
        return sum(1 if x == i else -1 if x == -i else 0 for x in self.letters)

    def __str__(self):
        return " ".join(str(x) for x in self.letters)


def word_commutator(a: FreeWord, b: FreeWord) -> FreeWord:
    """``a b a^-1 b^-1``, freely reduced."""
    a._same(b)
    return a * b * a.inverse() * b.inverse()


class MagnusSeries:
    """Truncated power series in non-commuting ``X_1 .. X_m``.

    ``coeffs`` maps tuples of 1-based generator indices (monomials) of length
    at most ``degree`` to nonzero integers.
    """

    __slots__ = ("generators", "degree", "coeffs")

    def __init__(self, generators: int, degree: int, coeffs: Mapping[tuple[int, ...], int]):
        if degree < 0:
            raise MagnusError("degree must be nonnegative")
        self.generators = generators
        self.degree = degree
        self.coeffs = {tuple(k): int(v) for k, v in coeffs.items() if v and len(k) <= degree}

    @classmethod
    def one(cls, generators: int, degree: int) -> "MagnusSeries":
        return cls(generators, degree, {(): 1})

    @classmethod
    def of_letter(cls, generators: int, degree: int, letter: int) -> "MagnusSeries":
        """Expansion of a single generator or its inverse."""
        i = abs(letter)
        if letter > 0:
            return cls(generators, degree, {(): 1, (i,): 1})
        return cls(generators, degree, {(i,) * k: (-1) ** k for k in range(degree + 1)})

    def coefficient(self, monomial: Sequence[int]) -> int:
        return self.coeffs.get(tuple(monomial), 0)

    def __mul__(self, other: "MagnusSeries") -> "MagnusSeries":
        if (self.generators, self.degree) != (other.generators, other.degree):
            raise MagnusError("series live in different truncated algebras")
        out: dict[tuple[int, ...], int] = {}
        d = self.degree
        for k1, v1 in self.coeffs.items():
            room = d - len(k1)
            for k2, v2 in other.coeffs.items():
                if len(k2) <= room:
                    k = k1 + k2
                    out[k] = out.get(k, 0) + v1 * v2
        return MagnusSeries(self.generators, d, out)

    def inverse(self) -> "MagnusSeries":
        """Inverse of a series with constant term 1, by the geometric series."""
        if self.coefficient(()) != 1:
            raise MagnusError("only series with constant term 1 are inverted here")
        nil = MagnusSeries(self.generators, self.degree, {k: -v for k, v in self.coeffs.items() if k})
        result = MagnusSeries.one(self.generators, self.degree)
        power = MagnusSeries.one(self.generators, self.degree)
        for _ in range(self.degree):
            power = power * nil
            result = MagnusSeries(
                self.generators,
                self.degree,
                {k: result.coeffs.get(k, 0) + power.coeffs.get(k, 0) for k in set(result.coeffs) | set(power.coeffs)},
            )
        return result

    def low_degree(self) -> Optional[int]:
        """Smallest positive length carrying a nonzero coefficient."""
        lengths = [len(k) for k in self.coeffs if k]
        return min(lengths) if lengths else None

    def __eq__(self, other):
        if not isinstance(other, MagnusSeries):
            return NotImplemented
        return (self.generators, self.degree, self.coeffs) == (other.generators, other.degree, other.coeffs)

    def __repr__(self):
        terms = sorted(self.coeffs.items(), key=lambda kv: (len(kv[0]), kv[0]))
        body = " + ".join(f"{v}*X{''.join(map(str, k))}" if k else str(v) for k, v in terms)
        return f"MagnusSeries(m={self.generators}, d={self.degree}: {body or '0'})"


def magnus_expand(w: FreeWord, degree: int = DEFAULT_DEGREE) -> MagnusSeries:
    """Truncated Magnus expansion, computed letter by letter on a dense array."""
    if degree < 1:
        raise MagnusError("degree must be at least 1")
    m = w.generators
    dense = kernels.magnus_expand_word(list(w.letters), m, degree)
    return MagnusSeries(m, degree, _sparse(dense, m, degree))


def _sparse(dense: list[int], m: int, d: int) -> dict[tuple[int, ...], int]:
    offs = kernels.magnus_offsets(m, d)
    out = {}
    for length in range(d + 1):
        base = offs[length]
        for code in range(m**length):
            v = dense[base + code]
            if v:
                digits = []
                c = code
                for _ in range(length):
                    c, r = divmod(c, m)
                    digits.append(r + 1)
                out[tuple(reversed(digits))] = v
    return out


def magnus_expand_naive(w: FreeWord, degree: int = DEFAULT_DEGREE) -> MagnusSeries:
    """Product of per-letter series; independent of the dense kernel."""
    result = MagnusSeries.one(w.generators, degree)
    for x in w.letters:
        result = result * MagnusSeries.of_letter(w.generators, degree, x)
    return result


def _check_longitudes(longitudes: Sequence[FreeWord]) -> int:
    if not longitudes:
        raise MagnusError("no longitudes given")
    m = longitudes[0].generators
    if any(l.generators != m for l in longitudes):
        raise MagnusError("longitudes must share a generator count")
    return m


def mu_invariant(longitudes: Sequence[FreeWord], indices: Sequence[int]) -> int:
    """Milnor invariant ``mu(i_1 .. i_r j)``: coefficient of ``X_{i_1}..X_{i_r}`` in ``l_j``."""
    m = _check_longitudes(longitudes)
    idx = tuple(int(i) for i in indices)
    if len(idx) < 2:
        raise MagnusError("a Milnor invariant needs at least two indices")
    if any(not 1 <= i <= m for i in idx) or idx[-1] > len(longitudes):
        raise MagnusError(f"indices {idx} out of range")
    *head, j = idx
    series = magnus_expand(longitudes[j - 1], len(head))
    return series.coefficient(head)


def first_nontrivial_degree(longitudes: Sequence[FreeWord], d_max: int = DEFAULT_DEGREE) -> Optional[int]:
    """Length of the shortest nonzero Milnor invariant, i.e. ``r`` for ``mu(i_1..i_r j)``."""
    _check_longitudes(longitudes)
    if d_max < 1:
        raise MagnusError("d_max must be at least 1")
    lows = [magnus_expand(l, d_max).low_degree() for l in longitudes]
    lows = [d for d in lows if d is not None]
    return min(lows) if lows else None


def nonzero_invariants(longitudes: Sequence[FreeWord], degree: int) -> list[tuple[tuple[int, ...], int]]:
    """All nonzero ``mu(i_1 .. i_r j)`` with ``r <= degree``, sorted by length then index."""
    _check_longitudes(longitudes)
    out = []
    for j, l in enumerate(longitudes, start=1):
        for k, v in magnus_expand(l, degree).coeffs.items():
            if k:
                out.append((k + (j,), v))
    out.sort(key=lambda kv: (len(kv[0]), kv[0]))
    return out


class LongitudeFormatError(MagnusError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


_LONG = re.compile(r"^longitude\s+(\d+)\s*:(.*)$")


def parse_longitudes(text: str) -> list[FreeWord]:
    """Read ``strands <m>`` followed by one ``longitude <j>: <letters>`` line per strand."""
    m = None
    found: dict[int, FreeWord] = {}
    last = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        last = lineno
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if m is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "strands" or not parts[1].isdigit() or int(parts[1]) < 1:
                raise LongitudeFormatError("expected header 'strands <m>'", lineno)
            m = int(parts[1])
            continue
        mt = _LONG.match(line)
        if not mt:
            raise LongitudeFormatError("expected 'longitude <j>: <letters>'", lineno)
        j = int(mt.group(1))
        if not 1 <= j <= m:
            raise LongitudeFormatError(f"strand {j} out of range 1..{m}", lineno)
        if j in found:
            raise LongitudeFormatError(f"duplicate longitude {j}", lineno)
        letters = []
        for tok in mt.group(2).split():
            try:
                x = int(tok)
            except ValueError:
                raise LongitudeFormatError(f"malformed letter {tok!r}", lineno) from None
            if x == 0 or abs(x) > m:
                raise LongitudeFormatError(f"letter {x} out of range for {m} strands", lineno)
            letters.append(x)
        found[j] = FreeWord(m, tuple(letters))
    if m is None:
        raise LongitudeFormatError("missing header 'strands <m>'", max(last, 1))
    missing = [j for j in range(1, m + 1) if j not in found]
    if missing:
        raise LongitudeFormatError(f"missing longitudes for strands {missing}", last)
    return [found[j] for j in range(1, m + 1)]


def format_longitudes(longitudes: Sequence[FreeWord]) -> str:
    m = _check_longitudes(longitudes)
    lines = [f"strands {m}"]
    lines += [f"longitude {j}: {l}".rstrip() for j, l in enumerate(longitudes, start=1)]
    return "\n".join(lines) + "\n"
