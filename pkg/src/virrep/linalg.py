"""Exact linear algebra over Q on top of the integer kernels.

Vectors live over a fixed ordered basis as Fraction lists.  Span data is
kept as content-free integer echelon rows (scaling is irrelevant for
spans), produced by the kernels; solving and membership reduction happen
here with Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from . import kernels


def clear_denominators(vec) -> list[int]:
    """Scale a Fraction vector to a primitive integer vector (content 1)."""
    lcm = 1
    for x in vec:
        d = x.denominator
        lcm = lcm * d // gcd(lcm, d)
    out = [int(x * lcm) for x in vec]
    kernels.strip_content(out)
    return out


class EchelonSpan:
    """A growing subspace stored as integer echelon rows."""

    __slots__ = ("ncols", "rows", "pivots")

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.rows)

    def insert(self, vec: list[Fraction]) -> bool:
        """Add a Fraction vector to the span; True if the dimension grew."""
        return self.insert_int(clear_denominators(vec))

    def insert_int(self, ivec: list[int]) -> bool:
        return kernels.echelon_insert(self.rows, self.pivots, ivec) >= 0

    def reduce(self, vec) -> list[Fraction]:
        """Residue of a Fraction vector modulo the span (pivot coords 0)."""
        out = [Fraction(x) for x in vec]
        for row, p in zip(self.rows, self.pivots):
            a = out[p]
            if a:
                f = a / row[p]
                for j in range(p, self.ncols):
                    out[j] -= f * row[j]
        return out

    def reduce_with_coeffs(self, vec) -> tuple[list[Fraction], list[Fraction]]:
        """Residue plus the coefficients over the stored rows, so that
        vec == sum(c_i * row_i) + residue exactly."""
        out = [Fraction(x) for x in vec]
        coeffs = [Fraction(0)] * len(self.rows)
        for i, (row, p) in enumerate(zip(self.rows, self.pivots)):
            a = out[p]
            if a:
                f = a / row[p]
                coeffs[i] = f
                for j in range(p, self.ncols):
                    out[j] -= f * row[j]
        return coeffs, out

    def contains(self, vec) -> bool:
        return all(x == 0 for x in self.reduce(vec))


def nullspace(rows, ncols: int) -> list[list[Fraction]]:
    """Basis of {x : M x = 0} for a matrix given as Fraction rows.

    Deterministic: one basis vector per free column, ascending, with a 1 in
    the free coordinate; computed by exact back-substitution.
    """
    int_rows = [clear_denominators(r) for r in rows]
    ech, pivots = kernels.row_echelon(int_rows, ncols)
    pivot_set = set(pivots)
    free_cols = [j for j in range(ncols) if j not in pivot_set]
    basis = []
    for f in free_cols:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(reversed(ech), reversed(pivots)):
            s = sum((Fraction(row[j]) * x[j] for j in range(p + 1, ncols)), Fraction(0))
            x[p] = -s / row[p]
        basis.append(x)
    return basis
