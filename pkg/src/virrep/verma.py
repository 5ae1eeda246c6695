"""Verma modules V(c,h), the contravariant form, singular vectors, and
quotients with exact per-level bases.

Elements are finite sums of lowering-PBW monomials applied to the highest
weight vector; the action of any L_k is computed by straightening against
the bracket, with per-(c,h) memoization.  Quotients keep an integer echelon
basis of the submodule at each level and reduce every element to the
canonical representative supported on the complement monomials.
"""

from __future__ import annotations

from fractions import Fraction

from .linalg import EchelonSpan, nullspace
from .words import (
    UNegElement,
    WordExpr,
    format_uneg,
    level_dim,
    partition_index,
    partitions,
)

# straightening caches shared by every presentation at the same (c, h)
_ACTION_CACHES: dict = {}
_GRAM_CACHE: dict = {}


def clear_caches():
    _ACTION_CACHES.clear()
    _GRAM_CACHE.clear()


def _action_cache(c, h) -> dict:
    cache = _ACTION_CACHES.get((c, h))
    if cache is None:
        cache = _ACTION_CACHES[(c, h)] = {}
    return cache


def _accum(acc: dict, key, val):
    cur = acc.get(key)
    new = val if cur is None else cur + val
    if new == 0:
        acc.pop(key, None)
    else:
        acc[key] = new


def _act_mono(cache, c, h, k, lam) -> dict:
    """L_k applied to the monomial L_{-lam} v in V(c,h)."""
    key = (k, lam)
    hit = cache.get(key)
    if hit is not None:
        return hit
    if not lam:
        if k > 0:
            res = {}
        elif k == 0:
            res = {(): h} if h else {}
        else:
            res = {(-k,): Fraction(1)}
    elif k <= -lam[0]:
        res = {(-k,) + lam: Fraction(1)}
    else:
        # commute L_k through the leading factor:
        # L_k L_{-a} = L_{-a} L_k + (k+a) L_{k-a} + delta_{k,a} (k^3-k)/12 C
        a = lam[0]
        rest = lam[1:]
        acc: dict = {}
        for mu, coef in _act_mono(cache, c, h, k, rest).items():
            for nu, c2 in _lower_mono(cache, c, h, a, mu).items():
                _accum(acc, nu, coef * c2)
        coeff = Fraction(k + a)
        if coeff:
            for mu, coef in _act_mono(cache, c, h, k - a, rest).items():
                _accum(acc, mu, coeff * coef)
        if k == a:
            central = Fraction(k**3 - k, 12) * c
            if central:
                _accum(acc, rest, central)
        res = acc
    cache[key] = res
    return res


def _lower_mono(cache, c, h, a, mu) -> dict:
    # L_{-a} (a >= 1) applied to the monomial mu
    if not mu or a >= mu[0]:
        return {(a,) + mu: Fraction(1)}
    return _act_mono(cache, c, h, -a, mu)


class VermaElement:
    """Element of V(c,h): finite map partition -> coefficient."""

    __slots__ = ("c", "h", "terms")

    def __init__(self, c, h, terms=None):
        self.c = Fraction(c)
        self.h = Fraction(h)
        self.terms: dict = {}
        if terms:
            for lam, coef in dict(terms).items():
                coef = Fraction(coef)
                if coef:
                    self.terms[tuple(lam)] = coef

    @classmethod
    def highest_weight(cls, c, h) -> "VermaElement":
        return cls(c, h, {(): 1})

    @classmethod
    def from_uneg(cls, c, h, u: UNegElement) -> "VermaElement":
        return cls(c, h, u.terms)

    def uneg(self) -> UNegElement:
        return UNegElement(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def levels(self) -> set:
        return {sum(lam) for lam in self.terms}

    def level(self) -> int | None:
        ls = self.levels()
        return ls.pop() if len(ls) == 1 else None

    def coefficient(self, lam) -> Fraction:
        return self.terms.get(tuple(lam), Fraction(0))

    def scale(self, s) -> "VermaElement":
        s = Fraction(s)
        return VermaElement(self.c, self.h, {m: v * s for m, v in self.terms.items()})

    def __add__(self, other: "VermaElement") -> "VermaElement":
        if (self.c, self.h) != (other.c, other.h):
            raise ValueError("elements of different modules")
        acc = dict(self.terms)
        for m, v in other.terms.items():
            _accum(acc, m, v)
        return VermaElement(self.c, self.h, acc)

    def __sub__(self, other: "VermaElement") -> "VermaElement":
        return self + other.scale(-1)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, VermaElement)
            and (self.c, self.h) == (other.c, other.h)
            and self.terms == other.terms
        )

    def __repr__(self):
        if self.is_zero():
            return "VermaElement(0)"
        return f"VermaElement({format_uneg(self.uneg())!r} * v)"


def act(k: int, x: VermaElement) -> VermaElement:
    """Exact action of L_k on a Verma module element."""
    cache = _action_cache(x.c, x.h)
    acc: dict = {}
    for lam, coef in x.terms.items():
        for mu, c2 in _act_mono(cache, x.c, x.h, k, lam).items():
            _accum(acc, mu, coef * c2)
    return VermaElement(x.c, x.h, acc)


def apply_word(w, x: VermaElement, actfn=act) -> VermaElement:
    """Apply a word or WordExpr, rightmost factor first."""
    zero = VermaElement(x.c, x.h)
    if isinstance(w, UNegElement):
        w = w.word_expr()
    if isinstance(w, WordExpr):
        out = zero
        for word, coef in w.terms.items():
            out = out + apply_word(word, x, actfn).scale(coef)
        return out
    y = x
    for k in reversed(tuple(w)):
        y = actfn(k, y)
    return y


def shapovalov_gram(c, h, N: int) -> list:
    """Level-N matrix of the contravariant form in the partition basis.

    Entry (lam, mu) is the v-coefficient of L_{i_1}...L_{i_n} L_{-mu} v
    where lam = (i_n >= ... >= i_1); its rank defect equals dim J(c,h)_N.
    """
    c, h = Fraction(c), Fraction(h)
    key = (c, h, N)
    hit = _GRAM_CACHE.get(key)
    if hit is not None:
        return hit
    basis = partitions(N)
    mat = []
    for i, lam in enumerate(basis):
        row = []
        for j, mu in enumerate(basis):
            if j < i:
                row.append(mat[j][i])  # symmetric
                continue
            y = VermaElement(c, h, {mu: 1})
            for p in lam:  # descending parts: largest raising operator first
                y = act(p, y)
            row.append(y.coefficient(()))
        mat.append(row)
    _GRAM_CACHE[key] = mat
    return mat


class ModulePresentation:
    """V(c,h) or a quotient of it, with cached per-level echelon bases.

    kind "verma"     : no relations.
    kind "generated" : quotient by the left ideal generated by the given
                       lowering elements (singular vectors).
    kind "radical"   : quotient by the radical of the contravariant form,
                       level by level -- the irreducible module L(c,h).
    """

    def __init__(self, c, h, kind="verma", generators=()):
        if kind not in ("verma", "generated", "radical"):
            raise ValueError(f"unknown presentation kind {kind!r}")
        self.c = Fraction(c)
        self.h = Fraction(h)
        self.kind = kind
        self.generators = [UNegElement(g.terms) for g in generators]
        self._sub: dict = {}
        self._basis: dict = {}
        self._action: dict = {}
        self._stage_gens: list | None = None

    @classmethod
    def verma(cls, c, h) -> "ModulePresentation":
        return cls(c, h, "verma")

    @classmethod
    def from_generators(cls, c, h, gens) -> "ModulePresentation":
        return cls(c, h, "generated", gens)

    @classmethod
    def irreducible(cls, c, h) -> "ModulePresentation":
        return cls(c, h, "radical")

    def __repr__(self):
        tag = {"verma": "V", "generated": "V/<gens>", "radical": "L"}[self.kind]
        return f"ModulePresentation({tag}({self.c}, {self.h}))"

    # -- per-level data ----------------------------------------------------

    def submodule_span(self, N: int) -> EchelonSpan:
        span = self._sub.get(N)
        if span is not None:
            return span
        span = EchelonSpan(level_dim(N))
        if self.kind == "generated" and N >= 1:
            for g in self.generators:
                glev = g.level()
                if glev is None:
                    raise ValueError("inhomogeneous submodule generator")
                if glev > N:
                    continue
                gv = VermaElement.from_uneg(self.c, self.h, g)
                for mu in partitions(N - glev):
                    y = gv
                    for p in reversed(mu):  # rightmost (smallest) factor first
                        y = act(-p, y)
                    span.insert(self._full_coords(y, N))
        elif self.kind == "radical" and N >= 1:
            for vec in nullspace(shapovalov_gram(self.c, self.h, N), level_dim(N)):
                span.insert(vec)
        self._sub[N] = span
        return span

    def level_basis(self, N: int) -> tuple:
        """Complement partitions: the canonical basis of the quotient."""
        basis = self._basis.get(N)
        if basis is None:
            piv = set(self.submodule_span(N).pivots)
            basis = tuple(lam for i, lam in enumerate(partitions(N)) if i not in piv)
            self._basis[N] = basis
        return basis

    def submodule_dim(self, N: int) -> int:
        return self.submodule_span(N).dim

    def dim(self, N: int) -> int:
        return level_dim(N) - self.submodule_dim(N)

    def _full_coords(self, x: VermaElement, N: int) -> list:
        idx = partition_index(N)
        out = [Fraction(0)] * level_dim(N)
        for lam, coef in x.terms.items():
            if sum(lam) != N:
                raise ValueError("element not homogeneous of the given level")
            out[idx[lam]] = coef
        return out

    def _element_from_full(self, coords, N: int) -> VermaElement:
        basis = partitions(N)
        return VermaElement(self.c, self.h, {basis[i]: v for i, v in enumerate(coords) if v})

    # -- quotient arithmetic ------------------------------------------------

    def reduce(self, x: VermaElement) -> VermaElement:
        """Canonical representative of x modulo the submodule."""
        if self.kind == "verma" or x.is_zero():
            return x
        out = VermaElement(self.c, self.h)
        for N in sorted(x.levels()):
            part = VermaElement(
                self.c, self.h, {m: v for m, v in x.terms.items() if sum(m) == N}
            )
            span = self.submodule_span(N)
            if span.dim:
                coords = span.reduce(self._full_coords(part, N))
                part = self._element_from_full(coords, N)
            out = out + part
        return out

    def is_zero(self, x: VermaElement) -> bool:
        return self.reduce(x).is_zero()

    def act(self, k: int, x: VermaElement) -> VermaElement:
        return self.reduce(act(k, x))

    def apply_word(self, w, x: VermaElement) -> VermaElement:
        return apply_word(w, x, actfn=self.act)

    def element(self, lam, coef=1) -> VermaElement:
        return self.reduce(VermaElement(self.c, self.h, {tuple(lam): coef}))

    def highest_weight_vector(self) -> VermaElement:
        return VermaElement.highest_weight(self.c, self.h)

    def coords(self, x: VermaElement, N: int) -> list:
        """Coordinates of a reduced level-N element over level_basis(N)."""
        basis = self.level_basis(N)
        pos = {lam: i for i, lam in enumerate(basis)}
        out = [Fraction(0)] * len(basis)
        for lam, coef in x.terms.items():
            if sum(lam) != N:
                raise ValueError("element not homogeneous of the given level")
            if lam not in pos:
                raise ValueError("element is not a canonical representative")
            out[pos[lam]] = coef
        return out

    def element_from_coords(self, coords, N: int) -> VermaElement:
        basis = self.level_basis(N)
        return VermaElement(self.c, self.h, {basis[i]: v for i, v in enumerate(coords) if v})

    def action_on_basis(self, k: int, N: int) -> tuple:
        """Sparse columns of L_k on the level-N quotient basis.

        Entry j lists (i, coef) pairs over level_basis(N-k); empty when the
        target level is negative.
        """
        key = (k, N)
        hit = self._action.get(key)
        if hit is not None:
            return hit
        target = N - k
        cols = []
        if target < 0:
            cols = [()] * self.dim(N)
        else:
            for lam in self.level_basis(N):
                img = self.act(k, VermaElement(self.c, self.h, {lam: 1}))
                coords = self.coords(img, target) if not img.is_zero() else []
                cols.append(tuple((i, v) for i, v in enumerate(coords) if v))
        cols = tuple(cols)
        self._action[key] = cols
        return cols

    # -- structure ----------------------------------------------------------

    def stage_generators(self, up_to: int) -> list:
        """Singular generators discovered stage by stage up to the level.

        Scans levels 1..up_to; at each level the singular vectors of the
        current stage quotient join the generator list.  For the radical
        presentation the resulting ideal must match the radical level by
        level (checked by the radical-consistency tests).
        """
        gens: list = []
        stage = ModulePresentation.verma(self.c, self.h)
        for N in range(1, up_to + 1):
            found = singular_vectors(stage, N)
            if found:
                gens.extend((N, s.uneg()) for s in found)
                stage = ModulePresentation.from_generators(
                    self.c, self.h, [g for _, g in gens]
                )
        return gens


def singular_vectors(M: ModulePresentation, N: int) -> list:
    """Echelonized basis of {x in M at level N : L_1 x = L_2 x = 0 in M}.

    Normalized so the L_{-1}^N coefficient is 1 when nonzero, otherwise by
    the first nonzero coordinate in the partition order.
    """
    if N < 1:
        raise ValueError("level must be >= 1")
    basis = M.level_basis(N)
    if not basis:
        return []
    d1 = M.dim(N - 1)
    d2 = M.dim(N - 2) if N >= 2 else 0
    images = []
    for lam in basis:
        e = VermaElement(M.c, M.h, {lam: 1})
        r1 = M.coords(M.act(1, e), N - 1) if d1 else []
        r2 = M.coords(M.act(2, e), N - 2) if (N >= 2 and d2) else []
        images.append(r1 + r2)
    nrows = d1 + d2
    mat = [[images[j][i] for j in range(len(basis))] for i in range(nrows)]
    sols = nullspace(mat, len(basis)) if nrows else [
        [Fraction(i == j) for j in range(len(basis))] for i in range(len(basis))
    ]
    out = []
    ff = (1,) * N
    for coords in sols:
        elem = M.element_from_coords(coords, N)
        lead = elem.coefficient(ff)
        if lead == 0:
            lead = next(
                elem.terms[lam] for lam in sorted(elem.terms) if elem.terms[lam]
            )
        out.append(elem.scale(1 / lead))
    return out


def reducibility_degree(c, h, max_level: int) -> int | None:
    """Smallest level <= max_level carrying a singular vector of V(c,h)."""
    V = ModulePresentation.verma(c, h)
    for N in range(1, max_level + 1):
        if singular_vectors(V, N):
            return N
    return None


def irreducible_quotient(c, h, max_level: int) -> ModulePresentation:
    """L(c,h) with submodule and quotient bases built up to max_level."""
    M = ModulePresentation.irreducible(c, h)
    for N in range(0, max_level + 1):
        M.level_basis(N)
    return M


def stage_quotient(c, h, below: int) -> ModulePresentation:
    """Quotient of V(c,h) by the singular vectors found at levels < below.

    The level-`below` singular vectors of this presentation are the new
    generators at that level (the second member of a minimal-model pair,
    for example), with representatives in the complement basis.
    """
    probe = ModulePresentation.verma(c, h)
    gens = [g for _, g in probe.stage_generators(below - 1)]
    if not gens:
        return ModulePresentation.verma(c, h)
    return ModulePresentation.from_generators(c, h, gens)
