# cython: language_level=3
"""Compiled twins of the kernels in ``_pykernels``.

Coefficients stay Python integers (they can exceed 64 bits); only the index
bookkeeping and control flow are typed.
"""
from libc.stdlib cimport malloc, free


def bareiss_det(rows):
    cdef Py_ssize_t n = len(rows)
    cdef Py_ssize_t i, j, k, r
    cdef int sign = 1
    cdef list a, rowi, rowk
    if n == 0:
        return 1
    a = [list(row) for row in rows]
    prev = 1
    for k in range(n - 1):
        if (<list>a[k])[k] == 0:
            for r in range(k + 1, n):
                if (<list>a[r])[k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        rowk = <list>a[k]
        akk = rowk[k]
        for i in range(k + 1, n):
            rowi = <list>a[i]
            aik = rowi[k]
            if aik == 0:
                if akk != prev:
                    for j in range(k + 1, n):
                        rowi[j] = (rowi[j] * akk) // prev
            else:
                for j in range(k + 1, n):
                    rowi[j] = (rowi[j] * akk - aik * rowk[j]) // prev
            rowi[k] = 0
        prev = akk
    return sign * (<list>a[n - 1])[n - 1]


cdef int _find(int* parent, int x) nogil:
    while parent[x] != x:
        x = parent[x]
    return x


cdef object _walk(int idx, int chosen, object prod, int m, int need,
                  int* us, int* vs, list ws, int* parent, int* size):
    cdef int ru, rv, tmp
    total = 0
    if chosen == need:
        return prod
    if m - idx < need - chosen:
        return 0
    ru = _find(parent, us[idx])
    rv = _find(parent, vs[idx])
    if ru != rv:
        if size[ru] < size[rv]:
            tmp = ru
            ru = rv
            rv = tmp
        parent[rv] = ru
        size[ru] += size[rv]
        total = _walk(idx + 1, chosen + 1, prod * ws[idx], m, need,
                      us, vs, ws, parent, size)
        size[ru] -= size[rv]
        parent[rv] = rv
    return total + _walk(idx + 1, chosen, prod, m, need, us, vs, ws, parent, size)


def tree_weight_sum(int n, us, vs, ws):
    cdef int m = len(us)
    cdef int need = n - 1
    cdef int i
    cdef int* cu
    cdef int* cv
    cdef int* parent
    cdef int* size
    if n <= 1:
        return 1
    if m < need:
        return 0
    cu = <int*>malloc(m * sizeof(int))
    cv = <int*>malloc(m * sizeof(int))
    parent = <int*>malloc(n * sizeof(int))
    size = <int*>malloc(n * sizeof(int))
    if not cu or not cv or not parent or not size:
        free(cu); free(cv); free(parent); free(size)
        raise MemoryError()
    try:
        for i in range(m):
            cu[i] = us[i]
            cv[i] = vs[i]
        for i in range(n):
            parent[i] = i
            size[i] = 1
        return _walk(0, 0, 1, m, need, cu, cv, list(ws), parent, size)
    finally:
        free(cu); free(cv); free(parent); free(size)


def magnus_offsets(int m, int d):
    cdef list offs = [0]
    cdef Py_ssize_t power = 1
    cdef int length
    for length in range(d):
        offs.append(offs[length] + power)
        power *= m
    return offs


def magnus_expand_word(letters, int m, int d):
    cdef list offs = magnus_offsets(m, d)
    cdef Py_ssize_t top = 1
    cdef Py_ssize_t base, pbase, pre, npre, tgt
    cdef int length, g, letter
    cdef list a
    for length in range(d):
        top *= m
    a = [0] * (offs[d] + top)
    a[0] = 1
    for letter in letters:
        g = abs(letter) - 1
        if letter > 0:
            for length in range(d, 0, -1):
                base = offs[length]
                pbase = offs[length - 1]
                npre = base - pbase
                for pre in range(npre):
                    c = a[pbase + pre]
                    if c:
                        tgt = base + pre * m + g
                        a[tgt] = a[tgt] + c
        else:
            for length in range(1, d + 1):
                base = offs[length]
                pbase = offs[length - 1]
                npre = base - pbase
                for pre in range(npre):
                    c = a[pbase + pre]
                    if c:
                        tgt = base + pre * m + g
                        a[tgt] = a[tgt] - c
    return a
