"""Pure-Python reference versions of the hot kernels.

Every function here has a drop-in twin in ``_ckernels.pyx``. Both operate on
plain Python integers so results are exact on either backend.
"""
from __future__ import annotations


def bareiss_det(rows: list[list[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                # exact by Sylvester's identity
                rowi[j] = (rowi[j] * akk - aik * rowk[j]) // prev
            rowi[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def tree_weight_sum(n: int, us: list[int], vs: list[int], ws: list[int]) -> int:
    """Sum over spanning trees of the product of edge weights.

    Vertices are ``0..n-1``; edge ``e`` joins ``us[e]`` and ``vs[e]`` with
    integer weight ``ws[e]``. Trees are enumerated explicitly by backtracking
    over edge subsets, rejecting any edge that would close a cycle.
    """
    if n <= 1:
        return 1
    m = len(us)
    need = n - 1
    if m < need:
        return 0
    parent = list(range(n))
    size = [1] * n

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    total = 0

    def walk(idx: int, chosen: int, prod: int) -> None:
        nonlocal total
        if chosen == need:
            total += prod
            return
        if m - idx < need - chosen:
            return
        ru, rv = find(us[idx]), find(vs[idx])
        if ru != rv:
            if size[ru] < size[rv]:
                ru, rv = rv, ru
            parent[rv] = ru
            size[ru] += size[rv]
            walk(idx + 1, chosen + 1, prod * ws[idx])
            size[ru] -= size[rv]
            parent[rv] = rv
        walk(idx + 1, chosen, prod)

    walk(0, 0, 1)
    return total


def magnus_offsets(m: int, d: int) -> list[int]:
    """Start index of each word length in the dense Magnus layout."""
    offs = [0]
    for length in range(d):
        offs.append(offs[-1] + m**length)
    return offs


def magnus_expand_word(letters: list[int], m: int, d: int) -> list[int]:
    """Dense truncated Magnus expansion of a free-group word.

    Coefficients are laid out by word length; a word ``g_1 ... g_L`` with
    0-based generator indices sits at ``offsets[L] + code`` where ``code`` reads
    the indices as base-``m`` digits, most significant first.
    """
    offs = magnus_offsets(m, d)
    size = offs[-1] + m**d
    a = [0] * size
    a[0] = 1
    for letter in letters:
        g = abs(letter) - 1
        if letter > 0:
            # a <- a * (1 + X_g); longest words first so prefixes stay old
            for length in range(d, 0, -1):
                base, pbase = offs[length], offs[length - 1]
                for pre in range(m ** (length - 1)):
                    c = a[pbase + pre]
                    if c:
                        a[base + pre * m + g] += c
        else:
            # a <- a * (1 + X_g)^-1, i.e. b[w g] = a[w g] - b[w]
            for length in range(1, d + 1):
                base, pbase = offs[length], offs[length - 1]
                for pre in range(m ** (length - 1)):
                    c = a[pbase + pre]
                    if c:
                        a[base + pre * m + g] -= c
    return a
