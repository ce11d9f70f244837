from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lmotheta.ncseries import (
    K,
    KP,
    MultiVariable,
    NCSeries,
    PolicyMismatch,
    Truncation,
    abelianize,
    abelianize_commutative,
    exp_variable,
    grade_part,
    substitute_zero,
)
from lmotheta.scalars import TaylorSeries

P6 = Truncation(6)
SURG = Truncation.surgery(6, 2)


def series(policy, max_len=4):
    words = st.text(alphabet=[K, KP], max_size=max_len)
    return st.dictionaries(words, st.integers(-3, 3), max_size=6).map(lambda d: NCSeries(d, policy))


def naive_mul(a: NCSeries, b: NCSeries) -> NCSeries:
    out = {}
    for w1, c1 in a.terms.items():
        for w2, c2 in b.terms.items():
            out[w1 + w2] = out.get(w1 + w2, 0) + c1 * c2
    return NCSeries(out, a.policy)


def test_truncation_policy():
    assert SURG.admits("kkkkkkKK")
    assert not SURG.admits("KKK")
    assert not SURG.admits("kkkkkkk")
    assert P6.grade("kK") == (2,)
    assert SURG.grade("kKk") == (2, 1)


def test_noncommutative_product():
    k, kp = NCSeries.letter(K, P6), NCSeries.letter(KP, P6)
    assert (k * kp).terms == {"kK": 1}
    assert (kp * k).terms == {"Kk": 1}
    assert k * kp != kp * k


def test_geometric_series_product():
    P3 = Truncation(3)
    a = NCSeries({"": 1, K: 1}, P3)
    b = NCSeries({"": 1, K: -1, "kk": 1, "kkk": -1}, P3)
    assert a * b == NCSeries.const(1, P3)


def test_policy_mismatch():
    with pytest.raises(PolicyMismatch):
        NCSeries.letter(K, P6) * NCSeries.letter(K, SURG)


@given(series(P6), series(P6), series(P6))
@settings(max_examples=100, deadline=None)
def test_associative_and_matches_naive(a, b, c):
    assert a * (b * c) == (a * b) * c
    assert a * b == naive_mul(a, b)
    assert a * (b + c) == a * b + a * c


@given(series(SURG), series(SURG))
@settings(max_examples=50, deadline=None)
def test_substitute_zero_homomorphism(a, b):
    for v in (K, KP):
        assert substitute_zero(a * b, v) == substitute_zero(a, v) * substitute_zero(b, v)
    both = substitute_zero(substitute_zero(a, K), KP)
    assert both == NCSeries.const(a.constant_term(), SURG)


def test_substitute_zero_example():
    a = NCSeries({"": 1, K: 1, KP: 1, "kK": 1}, SURG)
    assert substitute_zero(a, KP) == NCSeries({"": 1, K: 1}, SURG)


def test_grade_part_example():
    a = NCSeries({K: 1, "kK": 1, "KkK": 1}, SURG)
    assert grade_part(a, KP, 1) == NCSeries({"kK": 1}, SURG)


@given(series(SURG), series(SURG))
@settings(max_examples=50, deadline=None)
def test_grade_part_partition_and_convolution(a, b):
    assert sum((grade_part(a, KP, d) for d in range(3)), NCSeries.zero(SURG)) == a
    conv = NCSeries.zero(SURG)
    for i in range(3):
        conv = conv + grade_part(a, KP, i) * grade_part(b, KP, 2 - i)
    assert grade_part(a * b, KP, 2) == conv


def test_abelianize():
    assert abelianize(NCSeries({"": 1, K: 1, "kk": 1}, P6)).coeffs == (1, 1, 1, 0, 0, 0, 0)
    with pytest.raises(MultiVariable):
        abelianize(NCSeries({"kK": 1, "Kk": 1}, P6))
    assert abelianize_commutative(NCSeries({"kK": 1, "Kk": 1}, P6)) == {(1, 1): 2}


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=7), st.lists(st.integers(-3, 3), min_size=1, max_size=7))
def test_abelianize_homomorphism(xs, ys):
    a = NCSeries.from_taylor(TaylorSeries(xs), K, P6)
    b = NCSeries.from_taylor(TaylorSeries(ys), K, P6)
    assert abelianize(a * b) == abelianize(a) * abelianize(b)


def test_exp_variable():
    P3 = Truncation(3)
    assert exp_variable(K, 1, P3) == NCSeries({"": 1, K: 1, "kk": Fraction(1, 2), "kkk": Fraction(1, 6)}, P3)
    P2 = Truncation(2)
    assert exp_variable(K, Fraction(-1, 2), P2) == NCSeries({"": 1, K: Fraction(-1, 2), "kk": Fraction(1, 8)}, P2)
    P8 = Truncation(8)
    assert exp_variable(K, 1, P8) * exp_variable(K, -1, P8) == NCSeries.const(1, P8)


@given(series(P6), series(P6))
@settings(max_examples=40, deadline=None)
def test_truncation_coherence(a, b):
    P4 = Truncation(4)
    assert (a * b).truncate(P4) == a.truncate(P4) * b.truncate(P4)


def test_rendering():
    assert str(NCSeries({"kKk": 2}, SURG)) == "(2)*[k k' k]"
