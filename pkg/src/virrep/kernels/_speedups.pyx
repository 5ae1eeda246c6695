# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``kernels.pure``.

Same integer fraction-free row operations; entries stay arbitrary-precision
Python ints, Cython only removes the interpreter overhead of the inner
loops.  Semantics must match ``pure.py`` exactly (see tests/test_kernels).
"""

from math import gcd


def strip_content(list vec):
    cdef Py_ssize_t n = len(vec)
    cdef Py_ssize_t j, first = -1
    g = 0
    for j in range(n):
        x = vec[j]
        if x:
            if first < 0:
                first = j
            g = gcd(g, x if x > 0 else -x)
            if g == 1 and vec[first] > 0:
                break
    if first < 0:
        return -1
    if vec[first] < 0:
        g = -g
    if g != 1:
        for j in range(first, n):
            vec[j] = vec[j] // g
    return first


def echelon_insert(list rows, list pivots, list vec):
    cdef Py_ssize_t n = len(vec)
    cdef Py_ssize_t i, j, p, piv, lo, hi, mid
    cdef list row
    for i in range(len(rows)):
        p = pivots[i]
        a = vec[p]
        if a:
            row = rows[i]
            b = row[p]
            # vec := b*vec - a*row over the whole width (row is zero before p)
            for j in range(p):
                vec[j] = b * vec[j]
            for j in range(p, n):
                vec[j] = b * vec[j] - a * row[j]
    piv = strip_content(vec)
    if piv < 0:
        return -1
    lo = 0
    hi = len(pivots)
    while lo < hi:
        mid = (lo + hi) // 2
        if pivots[mid] < piv:
            lo = mid + 1
        else:
            hi = mid
    rows.insert(lo, vec)
    pivots.insert(lo, piv)
    return piv


def row_echelon(mat, Py_ssize_t ncols):
    cdef list rows = []
    cdef list pivots = []
    for vec in mat:
        if len(vec) != ncols:
            raise ValueError("ragged matrix")
        echelon_insert(rows, pivots, vec)
    return rows, pivots
