"""Exact computations with Virasoro representations.

Verma modules and their singular vectors, intermediate-series modules,
tensor products of the two, the polynomial reducibility criterion, and
minimal-model fusion rules -- everything in exact rational arithmetic.
"""

from .scalars import PolyQ, Rational, integer_roots, interpolate, poly_eval, rational

__all__ = [
    "PolyQ",
    "Rational",
    "integer_roots",
    "interpolate",
    "poly_eval",
    "rational",
]

__version__ = "0.1.0"
