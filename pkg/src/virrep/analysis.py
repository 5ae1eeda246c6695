"""The reducibility polynomial and the irreducibility verdict engine.

A level-m singular vector u of V(c,h) induces a degree-(at most m)
polynomial p whose integral roots locate the strict steps in the chain of
cyclic submodules of the tensor product with an intermediate-series
module.  Two independent constructions are implemented:

  * the product formula applied monomial by monomial (PhiFormula), and
  * replaying the defining relation at concrete integers and
    interpolating (Elimination).

Both are normalized monic and must agree; the verdict engine combines
their integral roots with the dropped-index adjustments of the degenerate
variants and, for minimal models, the common-root rule across the two
singular generators, cross-checked against the fusion-rule predictor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ConsistencyError
from .intermediate import ISParams, Variant, action_coefficient, variant_of
from .linalg import EchelonSpan
from .scalars import PolyQ, format_rational, integer_roots, interpolate, rational_sqrt
from .tensor import (
    TensorElement,
    TruncationWindow,
    apply_word,
    cyclic_subspace,
    subquotient_hw,
)
from .verma import (
    ModulePresentation,
    VermaElement,
    act,
    irreducible_quotient,
    reducibility_degree,
    singular_vectors,
    stage_quotient,
)
from .words import UNegElement, format_uneg, partitions

DEFAULT_CUTOFF = 12


# ---------------------------------------------------------------------------
# the polynomial, by the product formula


def phi_n(mono, alpha, beta) -> PolyQ:
    """Product formula for a lowering monomial, as a polynomial in n.

    For parts (k_r >= ... >= k_1) the factors run over the rightmost-first
    reading: prod_j (alpha + (1 - k_j) beta + n + k_1 + ... + k_j - 1).
    Extends linearly to UNegElement.
    """
    alpha, beta = Fraction(alpha), Fraction(beta)
    if isinstance(mono, UNegElement):
        out = PolyQ()
        for lam, coef in mono.terms.items():
            out = out + phi_n(lam, alpha, beta).scale(coef)
        return out
    parts = tuple(mono)
    out = PolyQ.constant(1)
    partial = 0
    for k in reversed(parts):  # rightmost factor first
        partial += k
        out = out * PolyQ([alpha + (1 - k) * beta + partial - 1, 1])
    return out


@dataclass(frozen=True)
class PPoly:
    """Monic reducibility polynomial attached to a singular vector."""

    poly: PolyQ
    level: int
    method: str  # "phi" or "elimination"
    lead: Fraction  # leading coefficient before the monic normalization

    @property
    def degree(self) -> int:
        return self.poly.degree

    def roots(self) -> list:
        return integer_roots(self.poly)

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "degree": self.degree,
            "method": self.method,
            "monic_coefficients": self.poly.to_strings(),
            "integral_roots": self.roots(),
        }


def _check_singular(u: UNegElement, c, h) -> int:
    level = u.level()
    if level is None or u.is_zero():
        raise ValueError("singular vector must be homogeneous and nonzero")
    uv = VermaElement.from_uneg(c, h, u)
    if not act(1, uv).is_zero() or not act(2, uv).is_zero():
        raise ValueError("element is not singular in the Verma module")
    return level


def p_from_singular(u: UNegElement, alpha, beta, c, h, verify=True) -> PPoly:
    """Monic polynomial via the product formula over the singular vector."""
    if verify:
        level = _check_singular(u, c, h)
    else:
        level = u.level()
    poly = phi_n(u, alpha, beta)
    if poly.is_zero():
        raise ConsistencyError("product formula vanished on a singular vector")
    lead = poly.coeffs[-1]
    return PPoly(poly.monic(), level, "phi", lead)


def p_via_elimination(
    u: UNegElement, alpha, beta, c, h, verify=True, max_tries=60
) -> PPoly:
    """Monic polynomial by replaying the defining relation and interpolating.

    For m+1 concrete integers n0, expands u(v_{n0+m-1} (x) v) in the tensor
    with V(c,h)/<u> and solves for the scalar on v_{n0-1} (x) v modulo the
    span of lowering words applied to v_{n0} (x) v, ..., v_{n0+m-2} (x) v.
    Sample points start at m+2, skipping degenerate configurations.
    """
    level = _check_singular(u, c, h) if verify else u.level()
    m = level
    # the defining relation is formal and holds in the full module at the
    # literal alpha; index drops only matter for the verdict adjustments
    alpha, beta = Fraction(alpha), Fraction(beta)
    params = ISParams(alpha, beta, alpha, Variant.FULL)
    module = ModulePresentation.from_generators(c, h, [u])
    points = []
    n0 = m + 2
    tries = 0
    while len(points) < m + 1:
        tries += 1
        if tries > max_tries:
            raise ConsistencyError("insufficient valid sample points for elimination")
        value = _eliminate_at(u, m, params, module, n0)
        if value is not None:
            points.append((Fraction(n0), value))
        n0 += 1
    poly = interpolate(points)
    if poly.is_zero() or poly.degree > m:
        raise ConsistencyError("elimination produced an inconsistent polynomial")
    lead = poly.coeffs[-1]
    return PPoly(poly.monic(), level, "elimination", lead)


def _eliminate_at(u, m, params, module, n0):
    """Scalar relating u(v_{n0+m-1} (x) v) to v_{n0-1} (x) v, or None when
    the sample point is degenerate."""
    target_index = n0 - 1
    if not all(params.index_exists(s) for s in range(n0 - 1, n0 + m)):
        return None
    # coordinates of the weight space: pairs (s, monomial) with s - level
    # constant; levels stay below m so the single-generator quotient is exact
    positions = []
    for s in range(target_index, n0 + m):
        lev = s - target_index
        for j in range(module.dim(lev)):
            positions.append((s, j))
    pos_of = {p: i for i, p in enumerate(positions)}

    def flatten(x: TensorElement):
        out = [Fraction(0)] * len(positions)
        for mm, xe in x.terms.items():
            for lam, coef in xe.terms.items():
                lev = sum(lam)
                jmap = {mono: j for j, mono in enumerate(module.level_basis(lev))}
                out[pos_of[(mm, jmap[lam])]] += coef
        return out

    span = EchelonSpan(len(positions))
    for i in range(1, m):
        base = TensorElement.pure(params, module, n0 + i - 1)
        for lam in partitions(i):
            w = tuple(-p for p in lam)
            span.insert(flatten(apply_word(w, base)))
    e = flatten(TensorElement.pure(params, module, target_index))
    e_res = span.reduce(e)
    if not any(e_res):
        return None  # degenerate: the target is absorbed by the span
    t = flatten(apply_word(u, TensorElement.pure(params, module, n0 + m - 1)))
    t_res = span.reduce(t)
    piv = next(i for i, v in enumerate(e_res) if v)
    scalar = t_res[piv] / e_res[piv]
    if any(tv != scalar * ev for tv, ev in zip(t_res, e_res)):
        raise ConsistencyError("tensor relation failed to close onto the target")
    return scalar


# ---------------------------------------------------------------------------
# closed-form roots for levels 2 and 3


@dataclass(frozen=True)
class RootExpr:
    """One root of the closed-form expressions: exact rational when the
    discriminant is a perfect square, symbolic text otherwise."""

    text: str
    value: Fraction | None = None

    @property
    def is_rational(self) -> bool:
        return self.value is not None


def _sqrt_roots(base: Fraction, disc: Fraction, denom: int) -> list:
    """Roots base +- sqrt(disc)/denom as RootExpr values."""
    root = rational_sqrt(disc)
    out = []
    if root is not None:
        for sign in (1, -1):
            val = base + Fraction(sign) * root / denom
            out.append(RootExpr(format_rational(val), val))
    else:
        for sign in ("+", "-"):
            out.append(
                RootExpr(f"{format_rational(base)} {sign} sqrt({format_rational(disc)})/{denom}")
            )
    return out


def closed_form_roots(level: int, h, alpha, beta) -> list:
    """The closed-form root expressions for levels 2 and 3 (cross-check)."""
    h, alpha, beta = Fraction(h), Fraction(alpha), Fraction(beta)
    if level == 2:
        base = -alpha + Fraction(4 * h - 1, 6)
        disc = (4 * h + 5) ** 2 - 24 * beta * (2 * h + 1)
        return _sqrt_roots(base, disc, 6)
    if level == 3:
        first = RootExpr(format_rational(-alpha + h), -alpha + h)
        base = -alpha + (h - 1) / 2
        disc = (h + 3) ** 2 - 8 * beta * (h + 1)
        return [first] + _sqrt_roots(base, disc, 2)
    raise ValueError("closed forms cover levels 2 and 3 only")


# ---------------------------------------------------------------------------
# minimal-model detection


def minimal_model_of(c) -> tuple | None:
    """(p, q) with p > q > 1 coprime when c is a minimal central charge."""
    c = Fraction(c)
    disc = (c - 13) ** 2 - 144
    root = rational_sqrt(disc)
    if root is None:
        return None
    t = ((13 - c) + root) / 12  # the solution with t >= 1
    if t <= 1:
        return None
    p, q = t.numerator, t.denominator
    if q < 2:
        return None
    return (q, p) if q < p else (p, q)


def kac_label_of(p: int, q: int, h) -> tuple | None:
    """(m, n) in the table with the given conformal weight, canonical."""
    from .fusion import MinimalLabel, conformal_weight

    h = Fraction(h)
    for m in range(1, p):
        for n in range(1, q):
            if conformal_weight(MinimalLabel(p, q, m, n)) == h:
                return MinimalLabel(p, q, m, n).canonical().mn
    return None


# ---------------------------------------------------------------------------
# the verdict


@dataclass
class Verdict:
    """Structured decision for one (alpha, beta, c, h)."""

    status: str  # "irreducible" | "reducible" | "inconclusive"
    alpha: Fraction
    beta: Fraction
    c: Fraction
    h: Fraction
    params: ISParams
    polynomials: list = field(default_factory=list)  # PPoly per singular level
    integral_roots: list = field(default_factory=list)  # surviving roots
    subquotient_weights: list = field(default_factory=list)
    rules_fired: list = field(default_factory=list)
    cross_checks: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "alpha": format_rational(self.alpha),
            "beta": format_rational(self.beta),
            "c": format_rational(self.c),
            "h": format_rational(self.h),
            "alpha_normalized": format_rational(self.params.alpha),
            "variant": self.params.variant.value,
            "polynomials": [p.to_json() for p in self.polynomials],
            "integral_roots": sorted(self.integral_roots),
            "subquotient_weights": [
                format_rational(w) for w in self.subquotient_weights
            ],
            "rules_fired": self.rules_fired,
            "cross_checks": self.cross_checks,
        }


def _fused_membership(params: ISParams, module: ModulePresentation, span_levels: int):
    """Exact certificate search for the fused chain step over a dropped index.

    beta = 0: is v_{-1} (x) v in the span of lowering words applied to
    v_{s} (x) v, s >= 1?   beta = 1: same with target v_{-2} and s >= 0.
    Spanning bases run up to span_levels above the target.
    """
    if params.variant is Variant.DROP_V0:
        lower = -1
    elif params.variant is Variant.DROP_VMINUS1:
        lower = -2
    else:
        raise ValueError("fused step only exists for the degenerate variants")
    positions = []
    sources = [
        s
        for s in range(lower + 1, lower + span_levels + 1)
        if params.index_exists(s)
    ]
    for s in [lower] + sources:
        lev = s - lower
        for j in range(module.dim(lev)):
            positions.append((s, j))
    pos_of = {p: i for i, p in enumerate(positions)}

    def flatten(x: TensorElement):
        out = [Fraction(0)] * len(positions)
        for mm, xe in x.terms.items():
            for lam, coef in xe.terms.items():
                lev = sum(lam)
                jmap = {mono: j for j, mono in enumerate(module.level_basis(lev))}
                out[pos_of[(mm, jmap[lam])]] += coef
        return out

    span = EchelonSpan(len(positions))
    for s in sources:
        base = TensorElement.pure(params, module, s)
        for lam in partitions(s - lower):
            w = tuple(-p for p in lam)
            span.insert(flatten(apply_word(w, base)))
    target = flatten(TensorElement.pure(params, module, lower))
    return span.contains(target)


def _singular_pair(c, h, cutoff):
    """First singular vector of V(c,h) and, in the stage quotient, the next
    one below the cutoff.  Returns (u1, m1, u2, m2) with None for missing."""
    m1 = reducibility_degree(c, h, cutoff)
    if m1 is None:
        return None, None, None, None
    V = ModulePresentation.verma(c, h)
    u1 = singular_vectors(V, m1)[0].uneg()
    stage = ModulePresentation.from_generators(c, h, [u1])
    for N in range(m1 + 1, cutoff + 1):
        found = singular_vectors(stage, N)
        if found:
            u2 = found[0].uneg()
            # prefer an honest Verma singular vector at the same level
            for cand in singular_vectors(V, N):
                if not stage.is_zero(VermaElement.from_uneg(c, h, cand.uneg())):
                    u2 = cand.uneg()
                    break
            return u1, m1, u2, N
    return u1, m1, None, None


def _adjusted_roots(params: ISParams, roots: list, module, span_levels: int):
    """Apply the dropped-index adjustments to a set of integral roots.

    Returns (surviving_roots, fused_gap, rules).  A root n locates the
    potential strict step at (n-1, n); steps touching the dropped index are
    merged into the fused step and decided by an exact membership search.
    """
    rules = []
    if params.variant is Variant.FULL:
        return list(roots), False, rules
    if params.variant is Variant.DROP_V0:
        fused_idx = {0, 1}
        vacuous = {1}
    else:
        fused_idx = {-1, 0}
        vacuous = set()
    plain = [n for n in roots if n not in fused_idx]
    fused_roots = [n for n in roots if n in fused_idx and n not in vacuous]
    for n in roots:
        if n in vacuous and n not in fused_roots:
            rules.append(f"root {n} discarded: its target vector is zero in this variant")
    fused_gap = False
    if fused_roots:
        member = _fused_membership(params, module, span_levels)
        if member:
            rules.append(
                "fused-step membership certified; roots "
                f"{sorted(fused_roots)} discarded"
            )
        else:
            fused_gap = True
            rules.append(
                "fused-step gap: no certificate within the span bound; roots "
                f"{sorted(fused_roots)} kept as the fused step"
            )
    return plain, fused_gap, rules


def verdict(alpha, beta, c, h, cutoff=DEFAULT_CUTOFF, run_cross_checks=False) -> Verdict:
    """Irreducibility decision for the tensor of the intermediate-series
    module with L(c,h)."""
    alpha, beta, c, h = (Fraction(x) for x in (alpha, beta, c, h))
    params = variant_of(alpha, beta)
    v = Verdict("inconclusive", alpha, beta, c, h, params)
    minimal = minimal_model_of(c)

    u1, m1, u2, m2 = _singular_pair(c, h, cutoff)

    if u1 is None:
        # no singular vector below the cutoff: the module factor is the
        # Verma module itself if that can be certified
        if c == 1 and rational_sqrt(4 * h) is None:
            v.status = "reducible"
            v.rules_fired.append(
                "Verma factor: V(1,h) is irreducible (h not a quarter-square), "
                "and tensoring with a Verma module is always reducible"
            )
            return v
        v.rules_fired.append(
            f"no singular vector up to level {cutoff}; Verma-module "
            "irreducibility not certified at this central charge"
        )
        return v

    if h == 0 and params.alpha != 0:
        v.status = "irreducible"
        v.rules_fired.append(
            "weight-zero factor with non-integral alpha: every cyclic step closes"
        )
        return v

    if h == 0 and params.alpha == 0 and minimal is None:
        v.status = "reducible"
        quotient_weight = h + 1 if beta in (0, 1) else 1 - beta
        v.polynomials.append(p_from_singular(u1, params.alpha, beta, c, h, verify=False))
        v.integral_roots = [0]
        v.subquotient_weights = [quotient_weight]
        v.rules_fired.append(
            "weight-zero factor, integral alpha, non-minimal charge: the "
            f"quotient is the Verma module of weight {format_rational(quotient_weight)}"
        )
        return v

    # polynomial route
    p1 = p_from_singular(u1, params.alpha, beta, c, h, verify=False)
    v.polynomials.append(p1)
    roots = set(p1.roots())
    if minimal is not None:
        if u2 is None:
            expected = kac_label_of(*minimal, h)
            if expected is not None:
                v.rules_fired.append(
                    "minimal-model weight but the second singular vector lies "
                    f"above the cutoff {cutoff}"
                )
                if roots:
                    v.status = "inconclusive"
                    return v
                # no roots of the first polynomial alone already suffices
        else:
            p2 = p_from_singular(u2, params.alpha, beta, c, h, verify=False)
            v.polynomials.append(p2)
            roots &= set(p2.roots())
            v.rules_fired.append("minimal model: common integral roots of both polynomials")

    module = irreducible_quotient(c, h, max(m1, m2 or 0) + 2)
    span_levels = max(m1, m2 or 0) + 2
    surviving, fused_gap, rules = _adjusted_roots(params, sorted(roots), module, span_levels)
    v.rules_fired.extend(rules)
    v.integral_roots = sorted(surviving)

    weights = [subquotient_hw(n - 1, params, h) for n in surviving]
    if fused_gap:
        weights.append(h + 1)
    v.subquotient_weights = sorted(set(weights))

    v.status = "reducible" if (surviving or fused_gap) else "irreducible"
    if not surviving and not fused_gap:
        v.rules_fired.append("no surviving integral root: every chain step closes")

    if run_cross_checks:
        run_fusion_cross_check(v, minimal)
    return v


def run_fusion_cross_check(v: Verdict, minimal=None):
    """Compare the verdict with the fusion-rule predictor on minimal models.

    Disagreement downgrades the status to inconclusive with both pieces of
    evidence attached.
    """
    from .fusion import MinimalLabel, reducible_pairs

    if minimal is None:
        minimal = minimal_model_of(v.c)
    if minimal is None:
        v.cross_checks["fusion"] = "not a minimal central charge"
        return
    label = kac_label_of(*minimal, v.h)
    if label is None:
        v.cross_checks["fusion"] = "weight outside the minimal-model table"
        return
    p, q = minimal
    pairs = reducible_pairs(p, q, MinimalLabel(p, q, *label))
    match = None
    for entry in pairs:
        if v.beta == entry.beta and (v.alpha - entry.alpha).denominator == 1:
            match = entry
            break
    predicted = "reducible" if match is not None else "irreducible"
    v.cross_checks["fusion"] = {
        "predicted": predicted,
        "pair": None
        if match is None
        else {
            "alpha": format_rational(match.alpha),
            "beta": format_rational(match.beta),
            "h3": format_rational(match.h3),
        },
    }
    if v.status in ("reducible", "irreducible") and predicted != v.status:
        v.cross_checks["fusion"]["disagrees_with"] = v.status
        v.status = "inconclusive"
        v.rules_fired.append(
            "fusion predictor disagrees with the root criterion; downgraded"
        )


def predict_intertwiners(v: Verdict) -> list:
    """Candidate operator types (h1, h2, h3) indicated by a reducible verdict.

    h1 = 1 - beta and h2 = h; h3 runs over the subquotient weights.  These
    are indications, not existence proofs; beta = 1 gives h1 = 0, the
    module/transposed-operator case.
    """
    if v.status != "reducible":
        raise ValueError("intertwiner prediction needs a reducible verdict")
    h1 = 1 - v.beta
    out = []
    for h3 in v.subquotient_weights:
        out.append(
            {
                "h1": h1,
                "h2": v.h,
                "h3": h3,
                "note": "module/transposed operator case" if h1 == 0 else "indicated, not proven",
            }
        )
    return out
