"""Pure-Python exact linear-algebra kernels.

Fraction-free integer row operations: rows are lists of Python ints with
their content (gcd) stripped and a positive leading entry.  These are the
hot loops of the package; ``_speedups.pyx`` holds a compiled twin with
byte-identical semantics, selected at import in ``kernels/__init__``.
"""

from math import gcd


def strip_content(vec):
    """Divide an int vector by its content, making the first nonzero entry
    positive.  Returns the index of that entry, or -1 for the zero vector."""
    g = 0
    first = -1
    n = len(vec)
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
            vec[j] //= g
    return first


def echelon_insert(rows, pivots, vec):
    """Reduce ``vec`` against an echelon family and insert the residue.

    ``rows`` are content-free int rows sorted by pivot column (``pivots``,
    ascending); ``vec`` is an int row, modified in place.  Returns the new
    pivot column, or -1 when vec reduces to zero (nothing inserted).
    """
    n = len(vec)
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
    # keep the family sorted by pivot column
    lo, hi = 0, len(pivots)
    while lo < hi:
        mid = (lo + hi) // 2
        if pivots[mid] < piv:
            lo = mid + 1
        else:
            hi = mid
    rows.insert(lo, vec)
    pivots.insert(lo, piv)
    return piv


def row_echelon(mat, ncols):
    """Echelonize a list of int rows.  Returns (rows, pivots), both sorted
    by pivot column; input rows are consumed (modified in place)."""
    rows, pivots = [], []
    for vec in mat:
        if len(vec) != ncols:
            raise ValueError("ragged matrix")
        echelon_insert(rows, pivots, vec)
    return rows, pivots
