"""Formal words in the Virasoro generators L_k and PBW straightening.

A word is a tuple of integer indices, read as the operator composition
L_{w[0]} . L_{w[1]} ... with the rightmost factor acting first.  Lowering
monomials L_{-i_n}...L_{-i_1} with i_n >= ... >= i_1 > 0 are encoded by
their partition (i_n, ..., i_1), weakly decreasing.

The bracket is [L_n, L_m] = (n-m) L_{n+m} + delta_{m,-n} (n^3-n)/12 C.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator

from .scalars import format_rational, rational

GenWord = tuple  # tuple[int, ...]
Partition = tuple  # weakly decreasing tuple[int, ...], parts >= 1


@lru_cache(maxsize=None)
def partitions(n: int) -> tuple:
    """Partitions of n as weakly decreasing tuples, sorted so that
    (1,1,...,1) comes first and (n,) last.  This fixed order makes L_{-1}^n
    the leading pivot candidate inside every level."""
    if n < 0:
        raise ValueError("negative level")
    if n == 0:
        return ((),)
    out = []

    def build(rest, maxpart, prefix):
        if rest == 0:
            out.append(tuple(prefix))
            return
        for p in range(1, min(rest, maxpart) + 1):
            prefix.append(p)
            build(rest - p, p, prefix)
            prefix.pop()

    build(n, n, [])
    # prefix lists come out with smallest parts first inside each shape;
    # normalize to descending tuples and sort lexicographically.
    out = sorted(tuple(sorted(t, reverse=True)) for t in out)
    return tuple(out)


@lru_cache(maxsize=None)
def partition_index(n: int) -> dict:
    return {lam: i for i, lam in enumerate(partitions(n))}


def level_dim(n: int) -> int:
    return len(partitions(n))


def bracket(n: int, m: int, c: Fraction) -> tuple[Fraction, Fraction]:
    """[L_n, L_m] as (coefficient of L_{n+m}, central scalar)."""
    coeff = Fraction(n - m)
    central = Fraction(0)
    if m == -n:
        central = Fraction(n**3 - n, 12) * Fraction(c)
    return coeff, central


class WordExpr:
    """Finite Q-linear combination of generator words."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict = {}
        if terms:
            for w, coef in dict(terms).items():
                self._add(tuple(w), Fraction(coef))

    def _add(self, word, coef):
        if coef == 0:
            return
        cur = self.terms.get(word)
        new = coef if cur is None else cur + coef
        if new == 0:
            self.terms.pop(word, None)
        else:
            self.terms[word] = new

    @classmethod
    def generator(cls, k: int) -> "WordExpr":
        return cls({(k,): 1})

    @classmethod
    def one(cls) -> "WordExpr":
        return cls({(): 1})

    def __add__(self, other: "WordExpr") -> "WordExpr":
        out = WordExpr(self.terms)
        for w, coef in other.terms.items():
            out._add(w, coef)
        return out

    def __sub__(self, other: "WordExpr") -> "WordExpr":
        return self + other.scale(-1)

    def scale(self, s) -> "WordExpr":
        s = Fraction(s)
        return WordExpr({w: coef * s for w, coef in self.terms.items()})

    def __mul__(self, other: "WordExpr") -> "WordExpr":
        """Composition product: (A*B)(x) = A(B(x))."""
        out = WordExpr()
        for wa, ca in self.terms.items():
            for wb, cb in other.terms.items():
                out._add(wa + wb, ca * cb)
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def items(self) -> Iterator:
        return iter(sorted(self.terms.items()))

    def __eq__(self, other) -> bool:
        return isinstance(other, WordExpr) and self.terms == other.terms

    def __repr__(self):
        return f"WordExpr({format_word_expr(self)!r})"


def word_from_partition(lam: Partition) -> GenWord:
    """The lowering word of a partition: L_{-i_n}...L_{-i_1}."""
    return tuple(-p for p in lam)


class UNegElement:
    """Q-linear combination of lowering-PBW monomials, keyed by partition.

    No zero coefficients are stored; homogeneous elements have all
    monomials of one level.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict = {}
        if terms:
            for lam, coef in dict(terms).items():
                self._add(tuple(lam), Fraction(coef))

    def _add(self, lam, coef):
        if coef == 0:
            return
        if any(p < 1 for p in lam) or list(lam) != sorted(lam, reverse=True):
            raise ValueError(f"not a partition: {lam}")
        cur = self.terms.get(lam)
        new = coef if cur is None else cur + coef
        if new == 0:
            self.terms.pop(lam, None)
        else:
            self.terms[lam] = new

    @classmethod
    def monomial(cls, lam, coef=1) -> "UNegElement":
        return cls({tuple(lam): coef})

    def is_zero(self) -> bool:
        return not self.terms

    def level(self) -> int | None:
        """Common level of all monomials, or None when inhomogeneous."""
        levels = {sum(lam) for lam in self.terms}
        if len(levels) == 1:
            return levels.pop()
        return None

    def coefficient(self, lam) -> Fraction:
        return self.terms.get(tuple(lam), Fraction(0))

    def scale(self, s) -> "UNegElement":
        s = Fraction(s)
        return UNegElement({lam: c * s for lam, c in self.terms.items()})

    def __add__(self, other: "UNegElement") -> "UNegElement":
        out = UNegElement(self.terms)
        for lam, c in other.terms.items():
            out._add(lam, c)
        return out

    def __sub__(self, other: "UNegElement") -> "UNegElement":
        return self + other.scale(-1)

    def word_expr(self) -> WordExpr:
        return WordExpr({word_from_partition(lam): c for lam, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, UNegElement) and self.terms == other.terms

    def __repr__(self):
        return f"UNegElement({format_uneg(self)!r})"


# ---------------------------------------------------------------------------
# normal ordering


def normal_order(w, c) -> dict:
    """Rewrite a word (or WordExpr) in the PBW basis.

    Returns {(neg_partition, L0_power, pos_word): coefficient} where the
    positive word is ascending; the element represented is identical to the
    input in the enveloping algebra at central charge c.
    """
    c = Fraction(c)
    if isinstance(w, WordExpr):
        items = list(w.terms.items())
    else:
        items = [(tuple(w), Fraction(1))]
    acc: dict = {}
    for word, coef in items:
        for key, kc in _normal_order_word(word, c).items():
            new = acc.get(key, Fraction(0)) + coef * kc
            if new == 0:
                acc.pop(key, None)
            else:
                acc[key] = new
    return acc


def _split_sorted(word) -> tuple:
    # word is ascending, so the negative magnitudes come out descending
    neg = tuple(-i for i in word if i < 0)
    zeros = sum(1 for i in word if i == 0)
    pos = tuple(i for i in word if i > 0)
    return (neg, zeros, pos)


def _normal_order_word(word, c) -> dict:
    word = tuple(word)
    for j in range(len(word) - 1):
        if word[j] > word[j + 1]:
            a, b = word[j], word[j + 1]
            swapped = word[:j] + (b, a) + word[j + 2 :]
            out: dict = {}
            for key, kc in _normal_order_word(swapped, c).items():
                out[key] = out.get(key, Fraction(0)) + kc
            coeff, central = bracket(a, b, c)
            if coeff:
                contracted = word[:j] + (a + b,) + word[j + 2 :]
                for key, kc in _normal_order_word(contracted, c).items():
                    out[key] = out.get(key, Fraction(0)) + coeff * kc
            if central:
                rest = word[:j] + word[j + 2 :]
                for key, kc in _normal_order_word(rest, c).items():
                    out[key] = out.get(key, Fraction(0)) + central * kc
            return {k: v for k, v in out.items() if v != 0}
    return {_split_sorted(word): Fraction(1)}


# ---------------------------------------------------------------------------
# parsing and printing: "1*L-1^2 - 2/5*L-2"

_TOKEN = re.compile(
    r"""
    (?P<sign>[+-])
  | (?P<coeff>\d+(?:/\d+)?)
  | (?P<gen>L(?P<idx>-?\d+)(?:\^(?P<pow>\d+))?)
  | (?P<mul>\*)
    """,
    re.VERBOSE,
)


def parse_word_expr(text: str) -> WordExpr:
    """Parse expressions like "L-2*L-2 - 3/5*L-4" (whitespace-insensitive)."""
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ValueError("empty expression")
    out = WordExpr()
    pos = 0
    sign = 1
    coeff = None
    factors: list[int] = []
    seen_gen = False

    def flush():
        nonlocal sign, coeff, factors, seen_gen
        if not seen_gen and coeff is None:
            raise ValueError(f"dangling sign in {text!r}")
        value = Fraction(sign) * (coeff if coeff is not None else Fraction(1))
        out._add(tuple(factors), value)
        sign, coeff, factors, seen_gen = 1, None, [], False

    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m:
            raise ValueError(f"cannot parse {text!r} at {s[pos:]!r}")
        pos = m.end()
        if m.group("sign"):
            if seen_gen or coeff is not None:
                flush()
            if m.group("sign") == "-":
                sign = -sign
        elif m.group("coeff"):
            value = Fraction(m.group("coeff"))
            coeff = value if coeff is None else coeff * value
        elif m.group("gen"):
            seen_gen = True
            idx = int(m.group("idx"))
            power = int(m.group("pow") or 1)
            factors.extend([idx] * power)
    flush()
    return out


def _format_word(word) -> str:
    if not word:
        return "1"
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        power = j - i
        parts.append(f"L{word[i]}" + (f"^{power}" if power > 1 else ""))
        i = j
    return "*".join(parts)


def format_word_expr(expr: WordExpr) -> str:
    if expr.is_zero():
        return "0"
    chunks = []
    for word, coef in sorted(expr.terms.items(), key=lambda t: tuple(-i for i in t[0])):
        mag = format_rational(abs(coef))
        body = f"{mag}*{_format_word(word)}"
        if not chunks:
            chunks.append(body if coef > 0 else f"-{body}")
        else:
            chunks.append(("+ " if coef > 0 else "- ") + body)
    return " ".join(chunks)


def format_uneg(u: UNegElement) -> str:
    """Word-syntax form of a lowering element, e.g. "1*L-1^2 - 2/5*L-2"."""
    return format_word_expr(u.word_expr())


def parse_uneg(text: str) -> UNegElement:
    expr = parse_word_expr(text)
    out = UNegElement()
    for word, coef in expr.terms.items():
        if any(i >= 0 for i in word) or tuple(sorted(word)) != word:
            raise ValueError(f"{text!r} is not a lowering PBW expression")
        out._add(tuple(-i for i in word), coef)
    return out
