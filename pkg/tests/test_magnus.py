import random

import pytest

from concordance_lab import kernels
from concordance_lab.magnus import (
    FreeWord,
    LongitudeFormatError,
    MagnusError,
    MagnusSeries,
    first_nontrivial_degree,
    format_longitudes,
    free_reduce,
    magnus_expand,
    magnus_expand_naive,
    mu_invariant,
    nonzero_invariants,
    parse_longitudes,
    word_commutator,
)


def random_word(rng, m, max_len=8):
    return FreeWord(m, tuple(rng.choice([1, -1]) * rng.randint(1, m) for _ in range(rng.randint(0, max_len))))


def x(m, i):
    return FreeWord.generator(m, i)


def iterated_commutator(m, depth, rng):
    """Left-normed commutator of ``depth`` generators."""
    w = x(m, rng.randint(1, m))
    for _ in range(depth - 1):
        w = word_commutator(x(m, rng.randint(1, m)), w)
    return w


class TestFreeWords:
    def test_reduction(self):
        assert free_reduce([1, -1, 2, 3, -3, -2, 1]) == (1,)
        assert FreeWord(2, (1, 2, -2, -1)).letters == ()

    def test_group(self):
        w = FreeWord(3, (1, -3, 2))
        assert (w * w.inverse()).letters == ()
        assert (w ** -2).letters == w.inverse().letters * 2
        assert w.exponent_sum(3) == -1

    def test_rejects(self):
        with pytest.raises(MagnusError):
            FreeWord(2, (3,))
        with pytest.raises(MagnusError):
            FreeWord(0)
        with pytest.raises(MagnusError):
            x(2, 1) * x(3, 1)


class TestExpansion:
    def test_letters(self):
        assert magnus_expand(x(2, 1), 3).coeffs == {(): 1, (1,): 1}
        assert magnus_expand(x(2, 1).inverse(), 3).coeffs == {(): 1, (1,): -1, (1, 1): 1, (1, 1, 1): -1}

    def test_commutator(self):
        c = word_commutator(x(2, 1), x(2, 2))
        assert magnus_expand(c, 2).coeffs == {(): 1, (1, 2): 1, (2, 1): -1}

    def test_rejects_degree(self):
        with pytest.raises(MagnusError):
            magnus_expand(x(2, 1), 0)

    def test_series_inverse(self):
        s = magnus_expand(FreeWord(2, (1, 2, 2, -1)), 4)
        assert s * s.inverse() == MagnusSeries.one(2, 4)
        with pytest.raises(MagnusError):
            MagnusSeries(2, 2, {(1,): 1}).inverse()

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_matches_oracle(self, m):
        rng = random.Random(m)
        for _ in range(40):
            w = random_word(rng, m)
            assert magnus_expand(w, 5) == magnus_expand_naive(w, 5)

    def test_homomorphism_and_inverse(self):
        rng = random.Random(10)
        for _ in range(200):
            m = rng.randint(1, 3)
            u, v = random_word(rng, m, 6), random_word(rng, m, 6)
            assert magnus_expand(u * v, 6) == magnus_expand_naive(u, 6) * magnus_expand_naive(v, 6)
            assert magnus_expand(u.inverse(), 6) == magnus_expand_naive(u, 6).inverse()

    def test_backends_agree(self):
        rng = random.Random(11)
        for _ in range(20):
            w = random_word(rng, 3, 12)
            results = {name: mod.magnus_expand_word(list(w.letters), 3, 5) for name, mod in kernels.BACKENDS.items()}
            assert len({tuple(r) for r in results.values()}) == 1


class TestMilnor:
    def test_linking_number(self):
        rng = random.Random(12)
        for _ in range(50):
            l1, l2 = random_word(rng, 2, 10), random_word(rng, 2, 10)
            assert mu_invariant([l1, l2], (1, 2)) == l2.exponent_sum(1)
            assert mu_invariant([l1, l2], (2, 1)) == l1.exponent_sum(2)

    def test_whitehead_type_word(self):
        # [x1, x2^-1 x1 x2] has zero linking but a nonzero degree-3 coefficient
        a = x(2, 1)
        b = x(2, 2).inverse() * x(2, 1) * x(2, 2)
        l = word_commutator(a, b)
        longs = [FreeWord(2), l]
        assert mu_invariant(longs, (1, 2)) == 0
        naive = magnus_expand_naive(l, 3)
        assert any(len(k) == 3 and v for k, v in naive.coeffs.items())
        assert first_nontrivial_degree(longs, 4) == 3

    @pytest.mark.parametrize("depth", [2, 3, 4, 5])
    def test_iterated_commutators(self, depth):
        rng = random.Random(depth)
        for _ in range(15):
            w = iterated_commutator(3, depth, rng)
            s = magnus_expand(w, depth + 1)
            assert all(len(k) >= depth for k in s.coeffs if k)
            fnd = first_nontrivial_degree([w, FreeWord(3), FreeWord(3)], depth + 1)
            assert fnd is None or fnd >= depth

    def test_trivial(self):
        assert first_nontrivial_degree([FreeWord(2), FreeWord(2)], 5) is None
        assert nonzero_invariants([FreeWord(2), FreeWord(2)], 3) == []

    def test_nonzero_invariants(self):
        longs = [x(2, 2), FreeWord(2)]
        assert nonzero_invariants(longs, 2) == [((2, 1), 1)]

    def test_rejects(self):
        with pytest.raises(MagnusError):
            mu_invariant([x(2, 1), x(2, 2)], (1,))
        with pytest.raises(MagnusError):
            mu_invariant([x(2, 1), x(2, 2)], (1, 3))
        with pytest.raises(MagnusError):
            first_nontrivial_degree([])


LONG = """# Borromean-style longitudes
strands 3
longitude 1: 2 3 -2 -3
longitude 2: 3 1 -3 -1
longitude 3: 1 2 -1 -2
"""


class TestFormat:
    def test_parse(self):
        longs = parse_longitudes(LONG)
        assert [l.letters for l in longs] == [(2, 3, -2, -3), (3, 1, -3, -1), (1, 2, -1, -2)]
        assert mu_invariant(longs, (2, 3, 1)) == 1
        assert first_nontrivial_degree(longs) == 2

    def test_roundtrip(self):
        longs = parse_longitudes(LONG)
        assert parse_longitudes(format_longitudes(longs)) == longs

    def test_empty_longitude(self):
        assert parse_longitudes("strands 1\nlongitude 1:\n")[0].letters == ()

    @pytest.mark.parametrize(
        "text,line",
        [
            ("", 1),
            ("strand 2\n", 1),
            ("strands 2\nlongitude 1: 1\n", 2),
            ("strands 2\nlongitude 3: 1\nlongitude 1:\n", 2),
            ("strands 2\nlongitude 1: 1\nlongitude 1: 2\n", 3),
            ("strands 2\nlongitude 1: 1 x\nlongitude 2:\n", 2),
            ("strands 2\nlongitude 1: 3\nlongitude 2:\n", 2),
            ("strands 2\nlong 1: 1\n", 2),
        ],
    )
    def test_rejects(self, text, line):
        with pytest.raises(LongitudeFormatError) as info:
            parse_longitudes(text)
        assert info.value.line == line
