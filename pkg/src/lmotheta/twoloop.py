"""Two-loop diagrams: thetas and dumbbells with k-labelled legs.

A theta has three edges carrying m1 <= m2 <= m3 legs. A dumbbell has two loops
(sorted leg counts) joined by a bridge edge. Coefficients are exact rationals and no
relation beyond the dumbbell-to-theta rule is imposed.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .ncseries import KP, Truncation
from .oneloop import MultiWheel
from .scalars import TaylorSeries, rat, rat_str

THETA = "theta"
DUMBBELL = "dumbbell"


class ResidualUnit(ValueError):
    pass


def theta_key(a: int, b: int, c: int = 0) -> tuple[str, tuple[int, int, int]]:
    return THETA, tuple(sorted((a, b, c)))


def dumbbell_key(loop1: int, loop2: int, bridge: int = 0) -> tuple[str, tuple[int, int, int]]:
    lo, hi = sorted((loop1, loop2))
    return DUMBBELL, (lo, hi, bridge)


@dataclass(frozen=True)
class ThetaFactored:
    """coeff * theta(label1, label2, empty) with labels given as series in k."""

    coeff: Fraction
    label1: TaylorSeries
    label2: TaylorSeries

    def __post_init__(self):
        object.__setattr__(self, "coeff", rat(self.coeff))


class TwoLoop:
    """Rational combination of canonical theta and dumbbell shapes."""

    __slots__ = ("terms", "policy")

    def __init__(self, terms: Mapping[tuple, object] | None, policy: Truncation):
        out: dict[tuple, Fraction] = {}
        for (shape, legs), c in (terms or {}).items():
            c = rat(c)
            if not c:
                continue
            key = theta_key(*legs) if shape == THETA else dumbbell_key(*legs)
            if sum(key[1]) > policy.order:
                continue
            out[key] = out.get(key, 0) + c
        self.terms = {k: c for k, c in out.items() if c}
        self.policy = policy

    @classmethod
    def zero(cls, policy: Truncation) -> "TwoLoop":
        return cls({}, policy)

    def __add__(self, other: "TwoLoop") -> "TwoLoop":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return TwoLoop(out, self.policy)

    def __neg__(self):
        return TwoLoop({k: -c for k, c in self.terms.items()}, self.policy)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "TwoLoop":
        s = rat(s)
        return TwoLoop({k: s * c for k, c in self.terms.items()}, self.policy)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, key) -> Fraction:
        shape, legs = key
        key = theta_key(*legs) if shape == THETA else dumbbell_key(*legs)
        return self.terms.get(key, Fraction(0))

    def has_dumbbells(self) -> bool:
        return any(shape == DUMBBELL for shape, _ in self.terms)

    def reduce_dumbbells(self) -> "TwoLoop":
        """Replace every dumbbell by its theta image."""
        out = TwoLoop({k: c for k, c in self.terms.items() if k[0] == THETA}, self.policy)
        n = self.policy.order
        for (shape, (l1, l2, br)), c in self.terms.items():
            if shape != DUMBBELL:
                continue
            tf = reduce_dumbbell(TaylorSeries.monomial(l1, n), TaylorSeries.monomial(br, n), TaylorSeries.monomial(l2, n))
            out = out + flatten(tf, self.policy).scale(c)
        return out

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0][0], kv[0][1], kv[1]))

    def to_json(self) -> list[dict]:
        return [{"shape": s, "legs": list(legs), "coeff": rat_str(c)} for (s, legs), c in self.sorted_items()]

    @classmethod
    def from_json(cls, items: Iterable[Mapping], policy: Truncation) -> "TwoLoop":
        return cls({(d["shape"], tuple(d["legs"])): rat(d["coeff"]) for d in items}, policy)

    def __eq__(self, other):
        if not isinstance(other, TwoLoop):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{s}{legs}" for (s, legs), c in self.sorted_items())

    __repr__ = __str__


def _split_theta_wheel(word: str) -> tuple[int, int]:
    i = word.index(KP)
    rot = word[i:] + word[:i]
    j = rot.index(KP, 1)
    return j - 1, len(rot) - j - 1


def pair_strut(mw: MultiWheel) -> TwoLoop:
    """Glue the two k' legs of each two-k'-leg term with a strut."""
    unit_part = {k: c for k, c in mw.terms.items() if all(KP not in w for w in k)}
    if unit_part != {(): 1}:
        raise ResidualUnit(f"k'-free part is not the unit: {unit_part}")
    out: dict[tuple, Fraction] = {}
    for wheels, c in mw.terms.items():
        counts = [w.count(KP) for w in wheels]
        if sum(counts) != 2 or 0 in counts:
            continue
        if len(wheels) == 1:
            key = theta_key(*_split_theta_wheel(wheels[0]))
        else:
            key = dumbbell_key(len(wheels[0]) - 1, len(wheels[1]) - 1, 0)
        out[key] = out.get(key, 0) + c
    return TwoLoop(out, mw.policy)


def reduce_dumbbell(q1: TaylorSeries, q2: TaylorSeries, q3: TaylorSeries) -> ThetaFactored:
    """Dumbbell with loop labels q1, q3 and bridge label q2, rewritten as a theta."""
    return ThetaFactored(q2.at_zero(), q1 - q1.negate_argument(), q3 - q3.negate_argument())


def flatten(tf: ThetaFactored, policy: Truncation) -> TwoLoop:
    """Expand the edge labels into legs."""
    n = policy.order
    out: dict[tuple, Fraction] = {}
    if not tf.coeff:
        return TwoLoop.zero(policy)
    for a, ca in enumerate(tf.label1.coeffs):
        if not ca or a > n:
            continue
        for b, cb in enumerate(tf.label2.coeffs):
            if a + b > n:
                break
            if cb:
                key = theta_key(a, b, 0)
                out[key] = out.get(key, 0) + tf.coeff * ca * cb
    return TwoLoop(out, policy)


def flatten_all(terms: Iterable[ThetaFactored], policy: Truncation) -> TwoLoop:
    total = TwoLoop.zero(policy)
    for tf in terms:
        total = total + flatten(tf, policy)
    return total


def specialize_k0(t: TwoLoop) -> Fraction:
    """The leg-free theta coefficient after dumbbell reduction."""
    return t.reduce_dumbbells().coeff(theta_key(0, 0, 0))
