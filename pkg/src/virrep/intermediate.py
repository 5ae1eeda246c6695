"""Intermediate-series modules and their irreducible versions.

The full module has basis {v_m : m integer} with L_n v_m =
-(m + alpha + beta + n*beta) v_{m+n} and the central element acting by
zero.  Integral alpha is normalized to 0 at construction; the two
degenerate irreducible versions drop one basis index:

  * beta = 0 drops v_0   (a quotient: components landing on 0 are cut),
  * beta = 1 drops v_-1  (a submodule: nothing maps onto -1).

For the beta = 1 variant a nonzero coefficient landing on the dropped
index indicates a bug and raises ConsistencyError; for beta = 0 the
dropped components are genuinely nonzero before the quotient map, so they
are discarded silently.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import ConsistencyError
from .scalars import format_rational


class Variant(Enum):
    FULL = "full"
    DROP_V0 = "drop_v0"
    DROP_VMINUS1 = "drop_vminus1"


@dataclass(frozen=True)
class ISParams:
    alpha: Fraction
    beta: Fraction
    alpha_original: Fraction
    variant: Variant

    @property
    def normalized(self) -> bool:
        return self.alpha != self.alpha_original

    def dropped_index(self) -> int | None:
        if self.variant is Variant.DROP_V0:
            return 0
        if self.variant is Variant.DROP_VMINUS1:
            return -1
        return None

    def index_exists(self, m: int) -> bool:
        return m != self.dropped_index()

    def __repr__(self):
        return (
            f"ISParams(alpha={format_rational(self.alpha)}, "
            f"beta={format_rational(self.beta)}, variant={self.variant.value})"
        )


def variant_of(alpha, beta) -> ISParams:
    """Normalize integral alpha to 0 and select the irreducible variant."""
    a, b = Fraction(alpha), Fraction(beta)
    orig = a
    if a.denominator == 1:
        a = Fraction(0)
    if a == 0 and b == 0:
        var = Variant.DROP_V0
    elif a == 0 and b == 1:
        var = Variant.DROP_VMINUS1
    else:
        var = Variant.FULL
    return ISParams(a, b, orig, var)


def action_coefficient(params: ISParams, n: int, m: int) -> Fraction:
    """Coefficient of v_{m+n} in L_n v_m."""
    return -(m + params.alpha + params.beta + n * params.beta)


def weight_offset(params: ISParams, m: int) -> Fraction:
    """L_0 eigenvalue of v_m."""
    return -(m + params.alpha + params.beta)


class ISElement:
    """Finite sum of basis vectors v_m with rational coefficients."""

    __slots__ = ("params", "terms")

    def __init__(self, params: ISParams, terms=None):
        self.params = params
        self.terms: dict = {}
        if terms:
            for m, coef in dict(terms).items():
                coef = Fraction(coef)
                if coef:
                    if not params.index_exists(m):
                        raise ValueError(f"index {m} is dropped in this variant")
                    self.terms[int(m)] = coef

    @classmethod
    def basis(cls, params: ISParams, m: int) -> "ISElement":
        return cls(params, {m: 1})

    def is_zero(self) -> bool:
        return not self.terms

    def scale(self, s) -> "ISElement":
        s = Fraction(s)
        return ISElement(self.params, {m: v * s for m, v in self.terms.items()})

    def __add__(self, other: "ISElement") -> "ISElement":
        if self.params != other.params:
            raise ValueError("elements of different modules")
        acc = dict(self.terms)
        for m, v in other.terms.items():
            new = acc.get(m, Fraction(0)) + v
            if new == 0:
                acc.pop(m, None)
            else:
                acc[m] = new
        return ISElement(self.params, acc)

    def __sub__(self, other: "ISElement") -> "ISElement":
        return self + other.scale(-1)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ISElement)
            and self.params == other.params
            and self.terms == other.terms
        )

    def __repr__(self):
        if self.is_zero():
            return "ISElement(0)"
        body = " + ".join(
            f"{format_rational(v)}*v[{m}]" for m, v in sorted(self.terms.items())
        )
        return f"ISElement({body})"


def act_is(n: int, x: ISElement) -> ISElement:
    """Exact action of L_n; dropped-index components are handled per variant."""
    params = x.params
    acc: dict = {}
    dropped = params.dropped_index()
    for m, coef in x.terms.items():
        target = m + n
        value = action_coefficient(params, n, m) * coef
        if target == dropped:
            if value != 0 and params.variant is Variant.DROP_VMINUS1:
                raise ConsistencyError(
                    f"nonzero component onto dropped index {dropped}: L_{n} v_{m}"
                )
            continue
        if value:
            new = acc.get(target, Fraction(0)) + value
            if new == 0:
                acc.pop(target, None)
            else:
                acc[target] = new
    return ISElement(params, acc)
