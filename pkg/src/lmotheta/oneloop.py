"""Wheels, the wheel-valued trace and the diagram-valued determinant.

A wheel is a cyclic word, stored as its lexicographically least rotation. Reversal
of a cyclic word is *not* identified with it.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .ncmatrix import NCMatrix, normalized_deviation
from .ncseries import Truncation, render_word, word_sort_key
from .scalars import TaylorSeries, rat


class ConstantDiagonal(ValueError):
    pass


@lru_cache(maxsize=1 << 16)
def canonical_rotation(word: str) -> str:
    if not word:
        raise ValueError("a wheel needs at least one leg")
    return min(word[i:] + word[:i] for i in range(len(word)))


def _sum_grades(grades):
    return tuple(map(sum, zip(*grades)))


class OneLoop:
    """Rational combination of wheels."""

    __slots__ = ("terms", "policy")

    def __init__(self, terms: Mapping[str, object] | None, policy: Truncation):
        out: dict[str, Fraction] = {}
        for w, c in (terms or {}).items():
            c = rat(c)
            if not c or not policy.admits(w):
                continue
            w = canonical_rotation(w)
            out[w] = out.get(w, 0) + c
        self.terms = {w: c for w, c in out.items() if c}
        self.policy = policy

    def __add__(self, other: "OneLoop") -> "OneLoop":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return OneLoop(out, self.policy)

    def __neg__(self):
        return OneLoop({w: -c for w, c in self.terms.items()}, self.policy)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "OneLoop":
        s = rat(s)
        return OneLoop({w: s * c for w, c in self.terms.items()}, self.policy)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, word: str) -> Fraction:
        return self.terms.get(canonical_rotation(word), Fraction(0))

    def restrict(self, letter: str, count: int) -> "OneLoop":
        """Wheels with exactly ``count`` occurrences of ``letter``."""
        return OneLoop({w: c for w, c in self.terms.items() if w.count(letter) == count}, self.policy)

    def __eq__(self, other):
        if not isinstance(other, OneLoop):
            return NotImplemented
        return self.policy == other.policy and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*W[{render_word(w)}]" for w, c in sorted(self.terms.items(), key=lambda t: word_sort_key(t[0])))

    __repr__ = __str__


class MultiWheel:
    """Rational combination of multisets of wheels; the empty multiset is the unit."""

    __slots__ = ("terms", "policy")

    def __init__(self, terms: Mapping[tuple[str, ...], object] | None, policy: Truncation):
        out: dict[tuple[str, ...], Fraction] = {}
        lim = policy.limits
        for ms, c in (terms or {}).items():
            c = rat(c)
            if not c:
                continue
            ms = tuple(sorted(canonical_rotation(w) for w in ms))
            g = _sum_grades([policy.grade(w) for w in ms]) if ms else (0,) * len(lim)
            if any(x > m for x, m in zip(g, lim)):
                continue
            out[ms] = out.get(ms, 0) + c
        self.terms = {k: c for k, c in out.items() if c}
        self.policy = policy

    @classmethod
    def unit(cls, policy: Truncation) -> "MultiWheel":
        return cls({(): 1}, policy)

    @classmethod
    def from_oneloop(cls, x: OneLoop) -> "MultiWheel":
        return cls({(w,): c for w, c in x.terms.items()}, x.policy)

    def __add__(self, other: "MultiWheel") -> "MultiWheel":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return MultiWheel(out, self.policy)

    def __neg__(self):
        return MultiWheel({k: -c for k, c in self.terms.items()}, self.policy)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "MultiWheel":
        s = rat(s)
        return MultiWheel({k: s * c for k, c in self.terms.items()}, self.policy)

    def __mul__(self, other):
        if not isinstance(other, MultiWheel):
            return self.scale(other)
        return disjoint_union(self, other)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, multiset) -> Fraction:
        key = tuple(sorted(canonical_rotation(w) for w in multiset))
        return self.terms.get(key, Fraction(0))

    def letter_part(self, letter: str, count: int) -> "MultiWheel":
        """Terms whose wheels together carry exactly ``count`` copies of ``letter``."""
        return MultiWheel(
            {k: c for k, c in self.terms.items() if sum(w.count(letter) for w in k) == count}, self.policy
        )

    def __eq__(self, other):
        if not isinstance(other, MultiWheel):
            return NotImplemented
        return self.policy == other.policy and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, c in sorted(self.terms.items(), key=lambda t: (sum(map(len, t[0])), t[0])):
            body = " u ".join(f"W[{render_word(w)}]" for w in k) or "1"
            parts.append(f"({c})*{body}")
        return " + ".join(parts)

    __repr__ = __str__


def disjoint_union(a: MultiWheel, b: MultiWheel) -> MultiWheel:
    """The commutative disjoint-union product, truncated."""
    if a.policy != b.policy:
        raise ValueError("policy mismatch")
    policy = a.policy
    lim = policy.limits
    grade = policy.grade

    def graded(x: MultiWheel):
        return [(k, c, _sum_grades([grade(w) for w in k]) if k else (0,) * len(lim)) for k, c in x.terms.items()]

    out: dict[tuple[str, ...], Fraction] = {}
    bg = graded(b)
    for k1, c1, g1 in graded(a):
        for k2, c2, g2 in bg:
            if any(x + y > m for x, y, m in zip(g1, g2, lim)):
                continue
            key = tuple(sorted(k1 + k2))
            out[key] = out.get(key, 0) + c1 * c2
    res = MultiWheel.__new__(MultiWheel)
    res.terms = {k: c for k, c in out.items() if c}
    res.policy = policy
    return res


def exp_sqcup(x: OneLoop) -> MultiWheel:
    """exp in the disjoint-union algebra, accumulated degree by degree with exact factorials."""
    gen = MultiWheel.from_oneloop(x)
    total = MultiWheel.unit(x.policy)
    term = total
    m = 0
    while True:
        m += 1
        term = disjoint_union(term, gen).scale(Fraction(1, m))
        if term.is_zero():
            return total
        total = total + term


def wheel_trace(M: NCMatrix) -> OneLoop:
    """Close each diagonal entry into wheels."""
    out: dict[str, Fraction] = {}
    for i in range(M.n):
        entry = M.rows[i][i]
        if entry.constant_term():
            raise ConstantDiagonal(f"diagonal entry {i} has constant term {entry.constant_term()}")
        for w, c in entry.terms.items():
            cw = canonical_rotation(w)
            out[cw] = out.get(cw, 0) + c
    return OneLoop(out, M.policy)


def psi_log(M: NCMatrix) -> OneLoop:
    """-Tr(sum_l (1 - M M_eps^-1)^l / l): the exponent of the normalized determinant."""
    E, _ = normalized_deviation(M)
    total = OneLoop({}, M.policy)
    power = E
    l = 1
    while not power.is_zero():
        total = total + wheel_trace(power).scale(Fraction(1, l))
        power = power * E
        l += 1
    return -total


def psi_power(M: NCMatrix, s) -> MultiWheel:
    """Psi(M)^s = exp_u(s * psi_log(M))."""
    return exp_sqcup(psi_log(M).scale(s))


def abelianize_psi(M: NCMatrix) -> TaylorSeries:
    """Commutative image of Psi(M) for a one-letter alphabet: det(M) / det(M_eps)."""
    x = psi_log(M)
    letters = {ch for w in x.terms for ch in w}
    letters |= {ch for r in M.rows for a in r for w in a.terms for ch in w}
    if len(letters) > 1:
        raise ValueError(f"abelianize_psi needs a one-letter alphabet, got {sorted(letters)}")
    v = letters.pop() if letters else "k"
    n = M.policy.cap_of(v)
    coeffs = [Fraction(0)] * (n + 1)
    for w, c in x.terms.items():
        coeffs[len(w)] += c
    return TaylorSeries(coeffs).exp()
