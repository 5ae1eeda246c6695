"""Tensor products of an intermediate-series module with a highest weight
module: element arithmetic, the Leibniz action, truncated cyclic
submodules and exact membership certificates.

A tensor element is a finite sum of v_m (x) x_m with x_m in the module
factor.  Weight-homogeneous elements have constant d = level(x_m) - m;
the L_0 eigenvalue is (h - alpha - beta) + d.  The weight spaces are
infinite dimensional, so cyclic submodules are only ever computed inside
a finite index window with a level cap; results are lower bounds for the
true intersection and all outputs are labeled evidence, not proof.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from . import kernels
from .intermediate import ISParams, action_coefficient
from .linalg import EchelonSpan, clear_denominators
from .verma import ModulePresentation, VermaElement
from .words import UNegElement, WordExpr, format_uneg


class TensorElement:
    """Finite sum of v_m (x) x_m, the module components stored per index."""

    __slots__ = ("params", "module", "terms")

    def __init__(self, params: ISParams, module: ModulePresentation, terms=None):
        self.params = params
        self.module = module
        self.terms: dict = {}
        if terms:
            for m, xe in dict(terms).items():
                if xe.is_zero():
                    continue
                if not params.index_exists(m):
                    raise ValueError(f"index {m} is dropped in this variant")
                self.terms[int(m)] = xe

    @classmethod
    def pure(cls, params, module, m: int, xe: VermaElement | None = None):
        """v_m (x) x, defaulting to the highest weight vector."""
        if xe is None:
            xe = module.highest_weight_vector()
        return cls(params, module, {m: module.reduce(xe)})

    def is_zero(self) -> bool:
        return not self.terms

    def scale(self, s) -> "TensorElement":
        s = Fraction(s)
        if s == 0:
            return TensorElement(self.params, self.module)
        return TensorElement(
            self.params, self.module, {m: xe.scale(s) for m, xe in self.terms.items()}
        )

    def __add__(self, other: "TensorElement") -> "TensorElement":
        if self.params != other.params or self.module is not other.module:
            raise ValueError("elements of different tensor modules")
        acc = dict(self.terms)
        for m, xe in other.terms.items():
            cur = acc.get(m)
            new = xe if cur is None else cur + xe
            if new.is_zero():
                acc.pop(m, None)
            else:
                acc[m] = new
        return TensorElement(self.params, self.module, acc)

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + other.scale(-1)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TensorElement)
            and self.params == other.params
            and self.module is other.module
            and self.terms == other.terms
        )

    def weight_components(self) -> dict:
        """Split by d = level - m; each value is weight-homogeneous."""
        out: dict = {}
        for m, xe in self.terms.items():
            for lam, coef in xe.terms.items():
                d = sum(lam) - m
                piece = out.setdefault(d, TensorElement(self.params, self.module))
                cur = piece.terms.get(m)
                add = VermaElement(xe.c, xe.h, {lam: coef})
                new = add if cur is None else cur + add
                piece.terms[m] = new
        return out

    def homogeneous_weight(self) -> int | None:
        ws = set()
        for m, xe in self.terms.items():
            ws.update(sum(lam) - m for lam in xe.terms)
        if len(ws) == 1:
            return ws.pop()
        return None

    def __repr__(self):
        if self.is_zero():
            return "TensorElement(0)"
        bits = []
        for m in sorted(self.terms):
            xe = self.terms[m]
            bits.append(f"v[{m}] (x) ({format_uneg(xe.uneg())} * v)")
        return "TensorElement(" + " + ".join(bits) + ")"


def act_tensor(k: int, x: TensorElement) -> TensorElement:
    """Leibniz action of L_k, with quotient reduction on the module factor."""
    params, module = x.params, x.module
    acc: dict = {}

    def add(m, xe):
        if xe.is_zero():
            return
        cur = acc.get(m)
        new = xe if cur is None else cur + xe
        if new.is_zero():
            acc.pop(m, None)
        else:
            acc[m] = new

    dropped = params.dropped_index()
    for m, xe in x.terms.items():
        co = action_coefficient(params, k, m)
        target = m + k
        if target == dropped:
            # quotient variant: the component dies with the dropped vector
            pass
        elif co:
            add(target, xe.scale(co))
        add(m, module.act(k, xe))
    return TensorElement(params, module, acc)


def apply_word(w, x: TensorElement) -> TensorElement:
    """Apply a word, WordExpr or lowering element, rightmost factor first."""
    if isinstance(w, UNegElement):
        w = w.word_expr()
    if isinstance(w, WordExpr):
        out = TensorElement(x.params, x.module)
        for word, coef in w.terms.items():
            out = out + apply_word(word, x).scale(coef)
        return out
    y = x
    for k in reversed(tuple(w)):
        y = act_tensor(k, y)
    return y


def subquotient_hw(n: int, params: ISParams, h) -> Fraction:
    """Highest weight of the n-th consecutive-quotient in the cyclic chain.

    For the beta = 0 and beta = 1 variants the fused quotients over the
    dropped index land on the same formula (value h + 1 at the fused step).
    """
    return Fraction(h) - params.alpha - params.beta - n


# ---------------------------------------------------------------------------
# truncated cyclic subspaces


@dataclass(frozen=True)
class TruncationWindow:
    """Finite readout window: intermediate-series indices in
    [m_min, m_max], module levels up to level_max.  The closure itself runs
    on the window padded by `margin` on each side, so certificates may
    transit outside the readout range."""

    m_min: int
    m_max: int
    level_max: int
    margin: int = 4

    def __post_init__(self):
        if self.m_min > self.m_max:
            raise ValueError("empty window")
        if self.level_max < 0 or self.margin < 0:
            raise ValueError("negative level cap or margin")

    @property
    def pad_lo(self) -> int:
        return self.m_min - self.margin

    @property
    def pad_hi(self) -> int:
        return self.m_max + self.margin

    @property
    def width(self) -> int:
        return self.m_max - self.m_min


class _WeightSpace:
    """Echelon span of one weight space, over (index, basis-slot) coords."""

    __slots__ = ("d", "positions", "pos_of", "span", "exprs")

    def __init__(self, d, positions):
        self.d = d
        self.positions = positions
        self.pos_of = {p: i for i, p in enumerate(positions)}
        self.span = EchelonSpan(len(positions))
        self.exprs: list | None = None


class CyclicTruncation:
    """Truncated U_{n0} = U(Vir)(v_{n0} (x) v): per-weight echelon bases.

    A lower bound for the true intersection with the window; membership
    answers are exact certificates inside the truncation.
    """

    def __init__(self, params, module, n0, window, track_words=False):
        self.params = params
        self.module = module
        self.n0 = n0
        self.window = window
        self.track_words = track_words
        self.spaces: dict = {}
        self._close()

    # -- coordinate layout ---------------------------------------------------

    def _layout(self, d) -> _WeightSpace:
        space = self.spaces.get(d)
        if space is None:
            positions = []
            w = self.window
            for m in range(w.pad_lo, w.pad_hi + 1):
                if not self.params.index_exists(m):
                    continue
                lev = d + m
                if lev < 0 or lev > w.level_max:
                    continue
                for j in range(self.module.dim(lev)):
                    positions.append((m, j))
            space = _WeightSpace(d, tuple(positions))
            if self.track_words:
                space.exprs = []
            self.spaces[d] = space
        return space

    def flatten(self, x: TensorElement) -> tuple:
        """(weight, Fraction coords) of a homogeneous element in the padded
        window; raises when any component falls outside."""
        d = x.homogeneous_weight()
        if d is None:
            raise ValueError("element is not weight-homogeneous")
        space = self._layout(d)
        out = [Fraction(0)] * len(space.positions)
        for m, xe in x.terms.items():
            lev_elem = self.module.reduce(xe)
            for lam, coef in lev_elem.terms.items():
                lev = sum(lam)
                jmap = {
                    mono: j for j, mono in enumerate(self.module.level_basis(lev))
                }
                pos = space.pos_of.get((m, jmap[lam]))
                if pos is None:
                    raise ValueError("component outside the truncation window")
                out[pos] += coef
        return d, out

    def unflatten(self, d, coords) -> TensorElement:
        space = self._layout(d)
        terms: dict = {}
        for pos, val in enumerate(coords):
            if not val:
                continue
            m, j = space.positions[pos]
            lev = d + m
            mono = self.module.level_basis(lev)[j]
            xe = terms.setdefault(m, VermaElement(self.module.c, self.module.h))
            terms[m] = xe + VermaElement(self.module.c, self.module.h, {mono: val})
        return TensorElement(self.params, self.module, terms)

    # -- closure ---------------------------------------------------------------

    def _insert(self, d, frac_coords, expr):
        """Insert a Fraction coordinate vector into the weight-d span.

        Returns the stored (row, expr) pair on growth, else None.  The
        tracked path mirrors the kernel arithmetic on the expression.
        """
        space = self._layout(d)
        span = space.span
        if space.exprs is None:
            ivec = clear_denominators(frac_coords)
            piv = kernels.echelon_insert(span.rows, span.pivots, ivec)
            return (ivec, None) if piv >= 0 else None
        vec = [Fraction(x) for x in frac_coords]
        for i, (row, p) in enumerate(zip(span.rows, span.pivots)):
            a = vec[p]
            if a:
                f = a / row[p]
                for j in range(p, span.ncols):
                    vec[j] -= f * row[j]
                expr = _expr_sub(expr, _expr_scale(space.exprs[i], f))
        piv = next((j for j, v in enumerate(vec) if v), -1)
        if piv < 0:
            return None
        ivec = clear_denominators(vec)
        expr = _expr_scale(expr, Fraction(ivec[piv], 1) / vec[piv])
        lo = 0
        while lo < len(span.pivots) and span.pivots[lo] < piv:
            lo += 1
        span.rows.insert(lo, ivec)
        span.pivots.insert(lo, piv)
        space.exprs.insert(lo, expr)
        return ivec, expr

    def _close(self):
        w = self.window
        params, module = self.params, self.module
        if not params.index_exists(self.n0):
            raise ValueError(f"index {self.n0} is dropped in this variant")
        if not (w.m_min <= self.n0 <= w.m_max):
            raise ValueError("cyclic generator outside the window")
        kmax = w.width + w.level_max
        ks = [k for k in range(-kmax, kmax + 1) if k]
        d0 = -self.n0
        space0 = self._layout(d0)
        seed = [Fraction(0)] * len(space0.positions)
        seed[space0.pos_of[(self.n0, 0)]] = Fraction(1)
        queue: deque = deque()
        stored = self._insert(d0, seed, [(Fraction(1), ())] if self.track_words else None)
        if stored:
            queue.append((d0,) + stored)
        dropped = params.dropped_index()
        while queue:
            d, row, expr = queue.popleft()
            src = self._layout(d)
            support = [(pos, row[pos]) for pos in range(len(row)) if row[pos]]
            for k in ks:
                dt = d - k
                tgt = self._layout(dt)
                if not tgt.positions:
                    continue
                # candidates are kept only when the exact image lies inside
                # the padded window; truncating a vector would break the
                # lower-bound guarantee, so stick-outs are dropped whole.
                acc: dict = {}
                valid = True
                for pos, a in support:
                    m, j = src.positions[pos]
                    lev = d + m
                    # intermediate-series part: index shifts, level unchanged
                    co = action_coefficient(params, k, m)
                    if co:
                        tm = m + k
                        if tm == dropped:
                            pass  # quotient variant: the component is zero
                        elif w.pad_lo <= tm <= w.pad_hi:
                            ppos = tgt.pos_of[(tm, j)]
                            acc[ppos] = acc.get(ppos, Fraction(0)) + co * a
                        else:
                            valid = False
                            break
                    # module part: index unchanged, level shifts by -k
                    if lev - k >= 0:
                        if lev - k > w.level_max:
                            # assume nonzero above the cap rather than build
                            # the action matrix there (conservative skip)
                            valid = False
                            break
                        for i, mco in module.action_on_basis(k, lev)[j]:
                            ppos = tgt.pos_of[(m, i)]
                            acc[ppos] = acc.get(ppos, Fraction(0)) + mco * a
                if not valid or not acc:
                    continue
                vec = [Fraction(0)] * len(tgt.positions)
                for ppos, val in acc.items():
                    vec[ppos] = val
                new_expr = None
                if self.track_words:
                    new_expr = [(c, (k,) + path) for c, path in expr]
                stored = self._insert(dt, vec, new_expr)
                if stored:
                    queue.append((dt,) + stored)

    # -- queries ---------------------------------------------------------------

    def dims(self) -> dict:
        return {d: s.span.dim for d, s in sorted(self.spaces.items()) if s.span.dim}

    def contains(self, x: TensorElement):
        """Exact membership in the truncated span, with a certificate.

        Returns (member, certificate); the certificate lists (coefficient,
        row) pairs that recombine to x exactly, plus the word expression of
        x over the cyclic generator when tracking is on.
        """
        if x.is_zero():
            return True, Certificate([], None)
        d, coords = self.flatten(x)
        space = self.spaces.get(d)
        if space is None or not space.span.dim:
            return False, None
        coeffs, residue = space.span.reduce_with_coeffs(coords)
        if any(v != 0 for v in residue):
            return False, None
        rows = [
            (c, space.span.rows[i]) for i, c in enumerate(coeffs) if c
        ]
        words = None
        if space.exprs is not None:
            acc: list = []
            for i, c in enumerate(coeffs):
                if c:
                    acc = _expr_add(acc, _expr_scale(space.exprs[i], c))
            words = acc
        return True, Certificate(rows, words)


@dataclass
class Certificate:
    """Exact decomposition of a member over the stored echelon rows."""

    rows: list
    words: list | None = None

    def word_expr(self) -> WordExpr | None:
        if self.words is None:
            return None
        return WordExpr({path: c for c, path in self.words})


def _expr_scale(expr, s):
    if s == 0:
        return []
    return [(c * s, path) for c, path in expr]


def _expr_add(a, b):
    acc = {path: c for c, path in a}
    for c, path in b:
        new = acc.get(path, Fraction(0)) + c
        if new == 0:
            acc.pop(path, None)
        else:
            acc[path] = new
    return [(c, path) for path, c in acc.items()]


def _expr_sub(a, b):
    return _expr_add(a, _expr_scale(b, -1))


def cyclic_subspace(
    params: ISParams,
    module: ModulePresentation,
    n0: int,
    window: TruncationWindow,
    track_words: bool = False,
) -> CyclicTruncation:
    """Truncation of the cyclic submodule generated by v_{n0} (x) v."""
    return CyclicTruncation(params, module, n0, window, track_words)


def contains(trunc: CyclicTruncation, x: TensorElement):
    return trunc.contains(x)


def existing_indices(params: ISParams, lo: int, hi: int) -> list:
    return [m for m in range(lo, hi + 1) if params.index_exists(m)]


def chain_evidence(
    params: ISParams,
    module: ModulePresentation,
    window: TruncationWindow,
    n_lo: int,
    n_hi: int,
) -> list:
    """Adjacent-step evidence for the descending chain of cyclic modules.

    For each existing index s in (n_lo, n_hi] with existing predecessor t,
    reports whether v_t (x) v lies in the truncation of U_s.  A False entry
    is evidence of a strict gap U_t != U_s (the truncation is a lower
    bound, so membership is a certificate, absence is evidence only).
    """
    idx = existing_indices(params, n_lo, n_hi)
    out = []
    for t, s in zip(idx, idx[1:]):
        trunc = cyclic_subspace(params, module, s, window)
        member, _ = trunc.contains(TensorElement.pure(params, module, t))
        out.append({"from": t, "to": s, "member": member})
    return out
