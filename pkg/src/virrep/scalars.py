"""Exact rational scalars and univariate polynomials over Q.

Every scalar in this package is a ``fractions.Fraction``: always reduced,
positive denominator, so equality is structural and hashing is cheap.
Polynomials are stored as ascending coefficient tuples with no trailing
zeros; the zero polynomial is the empty tuple.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Sequence

Rational = Fraction


def rational(value) -> Fraction:
    """Parse a rational from an int, Fraction or a "num/den" string."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_rational(x: Fraction) -> str:
    """"num/den" with the denominator omitted when it is 1."""
    return str(Fraction(x))


def rational_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root, or None when x is not a perfect rational square."""
    if x < 0:
        return None
    num, den = x.numerator, x.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


class PolyQ:
    """Univariate polynomial over Q, ascending coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, c) -> "PolyQ":
        return cls([Fraction(c)])

    @classmethod
    def variable(cls) -> "PolyQ":
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "PolyQ":
        p = cls.constant(1)
        for r in roots:
            p = p * cls([-Fraction(r), 1])
        return p

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x) -> Fraction:
        return poly_eval(self, x)

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyQ) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "PolyQ") -> "PolyQ":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return PolyQ(out)

    def __neg__(self) -> "PolyQ":
        return PolyQ([-c for c in self.coeffs])

    def __sub__(self, other: "PolyQ") -> "PolyQ":
        return self + (-other)

    def __mul__(self, other) -> "PolyQ":
        if isinstance(other, (int, Fraction)):
            return PolyQ([c * other for c in self.coeffs])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1 or 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return PolyQ(out)

    __rmul__ = __mul__

    def scale(self, s) -> "PolyQ":
        return PolyQ([c * s for c in self.coeffs])

    def monic(self) -> "PolyQ":
        if self.is_zero():
            raise ValueError("zero polynomial has no monic normalization")
        lead = self.coeffs[-1]
        return PolyQ([c / lead for c in self.coeffs])

    def compose_shift(self, k) -> "PolyQ":
        """p(n + k), exact."""
        out = PolyQ()
        shift = PolyQ([Fraction(k), 1])
        power = PolyQ.constant(1)
        for c in self.coeffs:
            out = out + power.scale(c)
            power = power * shift
        return out

    def to_strings(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_strings(cls, items: Sequence[str]) -> "PolyQ":
        return cls([rational(s) for s in items])

    def __repr__(self):
        if self.is_zero():
            return "PolyQ(0)"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(format_rational(c))
            elif i == 1:
                parts.append(f"{format_rational(c)}*n")
            else:
                parts.append(f"{format_rational(c)}*n^{i}")
        return "PolyQ(" + " + ".join(parts) + ")"


def poly_eval(p: PolyQ, x) -> Fraction:
    """Horner evaluation, exact."""
    x = Fraction(x)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def integer_roots(p: PolyQ) -> list[int]:
    """All integer roots of a nonzero polynomial, ascending, once each.

    Clears denominators, strips the n^k factor, then tests the divisors of
    the remaining constant term.  No floating point involved.
    """
    if p.is_zero():
        raise ValueError("every integer is a root of the zero polynomial")
    den_lcm = 1
    for c in p.coeffs:
        den_lcm = den_lcm * c.denominator // gcd(den_lcm, c.denominator)
    ints = [int(c * den_lcm) for c in p.coeffs]
    k = 0
    while ints[k] == 0:
        k += 1
    roots = set()
    if k > 0:
        roots.add(0)
    const = ints[k]
    for d in _divisors(const):
        for cand in (d, -d):
            if poly_eval(p, cand) == 0:
                roots.add(cand)
    return sorted(roots)


def interpolate(points: Sequence[tuple]) -> PolyQ:
    """Unique polynomial of degree < len(points) through the given points.

    Newton's divided differences over Q.  Raises on duplicate abscissae.
    """
    if not points:
        raise ValueError("need at least one point")
    xs = [Fraction(x) for x, _ in points]
    ys = [Fraction(y) for _, y in points]
    if len(set(xs)) != len(xs):
        raise ValueError("duplicate abscissa in interpolation data")
    # divided difference table, in place
    coef = list(ys)
    n = len(points)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # Newton form -> coefficient form
    poly = PolyQ()
    basis = PolyQ.constant(1)
    for i in range(n):
        poly = poly + basis.scale(coef[i])
        basis = basis * PolyQ([-xs[i], 1])
    return poly
