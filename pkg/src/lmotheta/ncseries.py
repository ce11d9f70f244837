"""Truncated power series in noncommuting variables with exact rational coefficients.

A word is a Python string with one character per letter, so concatenation is the
ring product on monomials. The surgery pipeline uses two letters: ``K`` (k) and
``KP`` (k'), the latter rendered as ``k'``.

Truncation keeps a word when the number of *uncapped* letters is at most ``order``
and each capped letter occurs at most its cap. The discarded words form a two-sided
ideal, so every operation below is exact in the quotient ring.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping

from .scalars import TaylorSeries, rat

K = "k"
KP = "K"

LETTER_NAMES = {K: "k", KP: "k'"}


class PolicyMismatch(ValueError):
    pass


class MultiVariable(ValueError):
    pass


@dataclass(frozen=True)
class Truncation:
    order: int
    caps: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("truncation order must be nonnegative")
        object.__setattr__(self, "caps", tuple(sorted(self.caps)))

    @classmethod
    def surgery(cls, order: int, kprime_cap: int = 2) -> "Truncation":
        """k-degree at most ``order``, at most ``kprime_cap`` letters k'."""
        return cls(order, ((KP, kprime_cap),))

    @property
    def limits(self) -> tuple[int, ...]:
        return (self.order,) + tuple(c for _, c in self.caps)

    def grade(self, word: str) -> tuple[int, ...]:
        counts = tuple(word.count(letter) for letter, _ in self.caps)
        return (len(word) - sum(counts),) + counts

    def admits(self, word: str) -> bool:
        return all(g <= lim for g, lim in zip(self.grade(word), self.limits))

    def cap_of(self, letter: str) -> int:
        for name, c in self.caps:
            if name == letter:
                return c
        return self.order

    def max_word_length(self) -> int:
        return self.order + sum(c for _, c in self.caps)


def render_word(word: str) -> str:
    if not word:
        return "1"
    return " ".join(LETTER_NAMES.get(ch, ch) for ch in word)


def word_sort_key(word: str):
    return (len(word), word)


class NCSeries:
    """Element of Q<<k_1..k_mu>> modulo the truncation ideal; immutable."""

    __slots__ = ("terms", "policy", "_graded")

    def __init__(self, terms: Mapping[str, object] | None, policy: Truncation):
        clean = {}
        for w, c in (terms or {}).items():
            c = rat(c)
            if c and policy.admits(w):
                clean[w] = clean.get(w, 0) + c
        self.terms = {w: c for w, c in clean.items() if c}
        self.policy = policy
        self._graded = None

    @classmethod
    def _raw(cls, terms: dict, policy: Truncation) -> "NCSeries":
        # terms already admitted and nonzero
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.policy = policy
        obj._graded = None
        return obj

    @classmethod
    def zero(cls, policy: Truncation) -> "NCSeries":
        return cls._raw({}, policy)

    @classmethod
    def const(cls, c, policy: Truncation) -> "NCSeries":
        return cls({"": c}, policy)

    @classmethod
    def letter(cls, v: str, policy: Truncation, c=1) -> "NCSeries":
        return cls({v: c}, policy)

    @classmethod
    def from_taylor(cls, s: TaylorSeries, v: str, policy: Truncation) -> "NCSeries":
        """Place a one-variable series in the letter v."""
        return cls({v * m: c for m, c in enumerate(s.coeffs)}, policy)

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> Fraction:
        return self.terms.get("", Fraction(0))

    def coeff(self, word: str) -> Fraction:
        return self.terms.get(word, Fraction(0))

    def _check(self, other: "NCSeries"):
        if self.policy != other.policy:
            raise PolicyMismatch(f"{self.policy} vs {other.policy}")

    def __add__(self, other):
        if not isinstance(other, NCSeries):
            other = NCSeries.const(other, self.policy)
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w, 0) + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return NCSeries._raw(out, self.policy)

    __radd__ = __add__

    def __neg__(self):
        return NCSeries._raw({w: -c for w, c in self.terms.items()}, self.policy)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s) -> "NCSeries":
        s = rat(s)
        if not s:
            return NCSeries.zero(self.policy)
        return NCSeries._raw({w: s * c for w, c in self.terms.items()}, self.policy)

    def graded(self):
        if self._graded is None:
            g = self.policy.grade
            self._graded = sorted(((w, c, g(w)) for w, c in self.terms.items()), key=lambda t: t[2][0])
        return self._graded

    def __mul__(self, other):
        if not isinstance(other, NCSeries):
            return self.scale(other)
        return nc_mul(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if isinstance(other, NCSeries):
            return self.policy == other.policy and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == NCSeries.const(other, self.policy).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def letters(self) -> set[str]:
        return {ch for w in self.terms for ch in w}

    def truncate(self, policy: Truncation) -> "NCSeries":
        return NCSeries(self.terms, policy)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*[{render_word(w)}]" for w, c in sorted(self.terms.items(), key=lambda t: word_sort_key(t[0])))

    def __repr__(self):
        return f"NCSeries({self})"


def nc_mul(a: NCSeries, b: NCSeries) -> NCSeries:
    """Concatenation product, truncated."""
    a._check(b)
    lim = a.policy.limits
    out: dict[str, Fraction] = {}
    bg = b.graded()
    if len(lim) == 2:
        l0, l1 = lim
        for w1, c1, g1 in a.graded():
            r0, r1 = l0 - g1[0], l1 - g1[1]
            if r0 < 0:
                break
            for w2, c2, g2 in bg:
                if g2[0] > r0:
                    break
                if g2[1] > r1:
                    continue
                w = w1 + w2
                out[w] = out.get(w, 0) + c1 * c2
    else:
        for w1, c1, g1 in a.graded():
            for w2, c2, g2 in bg:
                if g1[0] + g2[0] > lim[0]:
                    break
                if any(x + y > m for x, y, m in zip(g1[1:], g2[1:], lim[1:])):
                    continue
                w = w1 + w2
                out[w] = out.get(w, 0) + c1 * c2
    return NCSeries._raw({w: c for w, c in out.items() if c}, a.policy)


def substitute_zero(a: NCSeries, v: str) -> NCSeries:
    """Set the variable v to zero: drop every word containing it."""
    return NCSeries._raw({w: c for w, c in a.terms.items() if v not in w}, a.policy)


def grade_part(a: NCSeries, v: str, d: int) -> NCSeries:
    """Keep the words with exactly d occurrences of v."""
    return NCSeries._raw({w: c for w, c in a.terms.items() if w.count(v) == d}, a.policy)


def abelianize(a: NCSeries) -> TaylorSeries:
    """Commutative image of a one-variable series."""
    letters = a.letters()
    if len(letters) > 1:
        raise MultiVariable(f"series uses letters {sorted(letters)}")
    v = letters.pop() if letters else K
    n = a.policy.cap_of(v)
    out = [Fraction(0)] * (n + 1)
    for w, c in a.terms.items():
        out[len(w)] += c
    return TaylorSeries(out)


def abelianize_commutative(a: NCSeries, alphabet: Iterable[str] = (K, KP)) -> dict[tuple[int, ...], Fraction]:
    """Commutative image as a mapping from exponent tuples (in alphabet order) to coefficients."""
    alphabet = tuple(alphabet)
    out: dict[tuple[int, ...], Fraction] = {}
    for w, c in a.terms.items():
        key = tuple(w.count(v) for v in alphabet)
        out[key] = out.get(key, 0) + c
    return {k: c for k, c in out.items() if c}


def exp_variable(v: str, scale, policy: Truncation) -> NCSeries:
    """Sum of scale^m v^m / m! up to the truncation."""
    s = rat(scale)
    n = policy.cap_of(v)
    return NCSeries({v * m: s**m / factorial(m) for m in range(n + 1)}, policy)
