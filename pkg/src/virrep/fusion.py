"""Minimal-model bookkeeping: central charges, the weight table, admissible
triples, fusion products, the reducibility-pair predictor, and the c=1
fusion criteria.

Labels (m, n) with 0 < m < p, 0 < n < q describe the irreducible modules
of the rational vacuum algebra at central charge c_{p,q}; (m, n) and
(p-m, q-n) carry the same weight and are identified, the canonical
representative being the lexicographically smaller pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import ConsistencyError
from .scalars import format_rational, rational_sqrt


def _check_pq(p: int, q: int):
    from math import gcd

    if p <= 1 or q <= 1:
        raise ValueError("both parameters must exceed 1")
    if gcd(p, q) != 1:
        raise ValueError(f"({p}, {q}) are not coprime")


def central_charge(p: int, q: int) -> Fraction:
    """1 - 6 (p-q)^2 / (pq) for coprime p, q > 1."""
    _check_pq(p, q)
    return 1 - Fraction(6 * (p - q) ** 2, p * q)


@dataclass(frozen=True, order=True)
class MinimalLabel:
    p: int
    q: int
    m: int
    n: int

    def __post_init__(self):
        _check_pq(self.p, self.q)
        if not (0 < self.m < self.p and 0 < self.n < self.q):
            raise ValueError(f"label ({self.m},{self.n}) outside the ({self.p},{self.q}) table")

    @property
    def mn(self) -> tuple:
        return (self.m, self.n)

    def flip(self) -> "MinimalLabel":
        return MinimalLabel(self.p, self.q, self.p - self.m, self.q - self.n)

    def canonical(self) -> "MinimalLabel":
        # representative with the smaller column index (n, then m), matching
        # the customary table layout: (2,1) rather than its flip (1,3)
        other = self.flip()
        return self if (self.n, self.m) <= (other.n, other.m) else other

    def __repr__(self):
        return f"({self.m},{self.n})"


def conformal_weight(label: MinimalLabel) -> Fraction:
    """((np - mq)^2 - (p - q)^2) / (4pq); equal for a label and its flip."""
    p, q, m, n = label.p, label.q, label.m, label.n
    return Fraction((n * p - m * q) ** 2 - (p - q) ** 2, 4 * p * q)


def table_labels(p: int, q: int) -> list:
    """Canonical labels of the (p, q) table, sorted."""
    _check_pq(p, q)
    seen = set()
    out = []
    for m in range(1, p):
        for n in range(1, q):
            lab = MinimalLabel(p, q, m, n).canonical()
            if lab.mn not in seen:
                seen.add(lab.mn)
                out.append(lab)
    return sorted(out)


def _triple_conditions(p, q, ms, ns) -> bool:
    m1, m2, m3 = ms
    n1, n2, n3 = ns
    return (
        m1 + m2 + m3 < 2 * p
        and n1 + n2 + n3 < 2 * q
        and m1 < m2 + m3
        and m2 < m1 + m3
        and m3 < m1 + m2
        and n1 < n2 + n3
        and n2 < n1 + n3
        and n3 < n1 + n2
        and (m1 + m2 + m3) % 2 == 1
        and (n1 + n2 + n3) % 2 == 1
    )


def admissible(t1: MinimalLabel, t2: MinimalLabel, t3: MinimalLabel) -> bool:
    """Whether the ordered triple is admissible under some representative.

    All eight per-slot flip combinations are searched, which is wider than
    the simultaneous two-slot identification but is required to certify
    triples such as the all-sigma one in the (2,5) model; the range oracle
    below cross-checks the outcome.
    """
    labels = (t1, t2, t3)
    pq = {(t.p, t.q) for t in labels}
    if len(pq) != 1:
        raise ValueError("labels from different models")
    p, q = pq.pop()
    for flips in product((False, True), repeat=3):
        ms = tuple(t.flip().m if f else t.m for t, f in zip(labels, flips))
        ns = tuple(t.flip().n if f else t.n for t, f in zip(labels, flips))
        if _triple_conditions(p, q, ms, ns):
            return True
    return False


def fusion_product_by_ranges(l1: MinimalLabel, l2: MinimalLabel) -> set:
    """Independent interval-and-parity construction of the fusion product."""
    if (l1.p, l1.q) != (l2.p, l2.q):
        raise ValueError("labels from different models")
    p, q = l1.p, l1.q
    out = set()
    for m3 in range(abs(l1.m - l2.m) + 1, min(l1.m + l2.m, 2 * p - l1.m - l2.m), 2):
        for n3 in range(abs(l1.n - l2.n) + 1, min(l1.n + l2.n, 2 * q - l1.n - l2.n), 2):
            out.add(MinimalLabel(p, q, m3, n3).canonical())
    return out


def fusion_product(l1: MinimalLabel, l2: MinimalLabel, cross_check=True) -> set:
    """{l3 : (l1, l2, l3) admissible}, canonicalized.

    The admissible-triple search and the range construction are two
    independent routes; with cross_check on, a discrepancy raises rather
    than being silently resolved.
    """
    if (l1.p, l1.q) != (l2.p, l2.q):
        raise ValueError("labels from different models")
    p, q = l1.p, l1.q
    out = {l3 for l3 in table_labels(p, q) if admissible(l1, l2, l3)}
    if cross_check:
        ranged = fusion_product_by_ranges(l1, l2)
        if ranged != out:
            raise ConsistencyError(
                f"fusion table data error for {l1} x {l2}: "
                f"triple search {sorted(out)} vs range construction {sorted(ranged)}"
            )
    return out


@dataclass(frozen=True)
class ReduciblePair:
    """One predicted reducibility point with its quotient weight."""

    alpha: Fraction
    beta: Fraction
    h3: Fraction

    def to_json(self) -> dict:
        return {
            "alpha": format_rational(self.alpha),
            "beta": format_rational(self.beta),
            "h3": format_rational(self.h3),
        }


def reducible_pairs(p: int, q: int, l2: MinimalLabel) -> list:
    """All (alpha, beta, h3) whose tensor with the l2 module must be
    reducible, one per admissible triple with a nonzero first weight.

    alpha = h1 + h2 - h3 (normalized to 0 when integral) and beta = 1 - h1;
    triples with h1 = 0 always exist (module and transposed operators) and
    carry no reducibility content, so they are excluded.
    """
    h2 = conformal_weight(l2)
    out = []
    seen = set()
    for l1 in table_labels(p, q):
        h1 = conformal_weight(l1)
        if h1 == 0:
            continue
        for l3 in fusion_product(l1, l2):
            h3 = conformal_weight(l3)
            alpha = h1 + h2 - h3
            if alpha.denominator == 1:
                alpha = Fraction(0)
            entry = ReduciblePair(alpha, 1 - h1, h3)
            if entry not in seen:
                seen.add(entry)
                out.append(entry)
    return sorted(out, key=lambda e: (e.beta, e.alpha, e.h3))


def minimal_table(p: int, q: int) -> dict:
    """JSON table: central charge, weights, and the full fusion product."""
    labels = table_labels(p, q)
    fusion = []
    for i, l1 in enumerate(labels):
        for l2 in labels[i:]:
            prod = sorted(fusion_product(l1, l2))
            fusion.append([list(l1.mn), list(l2.mn), [list(l.mn) for l in prod]])
    return {
        "p": p,
        "q": q,
        "c": format_rational(central_charge(p, q)),
        "labels": [
            {"m": l.m, "n": l.n, "h": format_rational(conformal_weight(l))}
            for l in labels
        ],
        "fusion": fusion,
    }


# ---------------------------------------------------------------------------
# c = 1 fusion criteria


def _integer_square(h: Fraction) -> int | None:
    r = rational_sqrt(Fraction(h))
    if r is not None and r.denominator == 1:
        return int(r)
    return None


def c1_fusion_exists(h1, h2, h3) -> bool | None:
    """The c = 1 fusion criteria; None when no stated rule applies.

    Integer-square weights fuse by the triangle rule; a non-square factor
    pins the outcome to weight equality (directly or transposed).
    """
    h1, h2, h3 = Fraction(h1), Fraction(h2), Fraction(h3)
    if any(x < 0 for x in (h1, h2, h3)):
        raise ValueError("weights must be nonnegative")
    m = _integer_square(h1)
    n = _integer_square(h2)
    if m is not None and n is not None:
        k = _integer_square(h3)
        if k is None:
            return False
        return abs(n - m) <= k <= n + m
    if m is not None and n is None:
        return h3 == h2
    if m is None and n is not None:
        return h3 == h1
    return None


def delta_weight(kappa, k: int) -> Fraction:
    """k(k+2)/(4 kappa) - k/2; at kappa = 1 this is k^2/4."""
    kappa = Fraction(kappa)
    if kappa == 0:
        raise ValueError("kappa must be nonzero")
    return Fraction(k * (k + 2)) / (4 * kappa) - Fraction(k, 2)


def triple_admissible(k1: int, k2: int, k3: int) -> bool:
    """Triangle rule with even total for the deformed-weight family."""
    return abs(k1 - k2) <= k3 <= k1 + k2 and (k1 + k2 + k3) % 2 == 0
