from fractions import Fraction

from hypothesis import given, settings, strategies as st

from lmotheta.ncseries import Truncation
from lmotheta.oneloop import MultiWheel
from lmotheta.scalars import TaylorSeries
from lmotheta.twoloop import (
    DUMBBELL,
    THETA,
    ResidualUnit,
    ThetaFactored,
    TwoLoop,
    dumbbell_key,
    flatten,
    flatten_all,
    pair_strut,
    reduce_dumbbell,
    specialize_k0,
    theta_key,
)

SURG = Truncation.surgery(6, 2)
SURG4 = Truncation.surgery(6, 4)
N = 6


def mw(*items, policy=SURG):
    """items: (coeff, wheel, wheel, ...) tuples; the unit is always included."""
    terms = {(): 1}
    for c, *wheels in items:
        terms[tuple(wheels)] = c
    return MultiWheel(terms, policy)


def series(*coeffs):
    return TaylorSeries(list(coeffs) + [0] * (N + 1 - len(coeffs)))


def test_pair_strut_examples():
    assert pair_strut(mw((1, "KK"))).terms == {theta_key(0, 0): 1}
    assert pair_strut(mw((1, "kKkK"))).terms == {theta_key(1, 1): 1}
    assert pair_strut(mw((1, "Kk", "Kk"))).terms == {dumbbell_key(1, 1): 1}
    assert pair_strut(mw((1, "KKK"), policy=SURG4)).is_zero()
    assert pair_strut(mw((3, "Kkk"))).is_zero()


def test_pair_strut_splits_arcs():
    assert pair_strut(mw((2, "kKkkK"))).terms == {theta_key(1, 2): 2}


def test_pair_strut_residual_unit():
    try:
        pair_strut(MultiWheel({(): 1, ("k",): 1}, SURG))
    except ResidualUnit:
        pass
    else:
        raise AssertionError("expected ResidualUnit")


def test_pair_strut_cap_coherence():
    items = [(1, "KK"), (Fraction(1, 3), "kKkK"), (2, "Kk", "Kkk"), (5, "KKKk"), (1, "KK", "KK")]
    lo = pair_strut(mw(*items[:3]))
    hi = pair_strut(mw(*items, policy=SURG4))
    assert lo == hi


def test_reduce_dumbbell_examples():
    tf = reduce_dumbbell(series(0, 1), series(1), series(0, 1))
    assert tf.coeff == 1
    assert flatten(tf, SURG).terms == {theta_key(1, 1): 4}
    assert flatten(reduce_dumbbell(series(0, 0, 1), series(1), series(3, 1, 4)), SURG).is_zero()
    assert flatten(reduce_dumbbell(series(0, 1), series(1, 1), series(0, 1)), SURG) == flatten(tf, SURG)


@given(st.lists(st.integers(-4, 4), min_size=N + 1, max_size=N + 1), st.lists(st.integers(-4, 4), min_size=N + 1, max_size=N + 1))
def test_reduce_dumbbell_odd(q1, q3):
    a, b = TaylorSeries(q1), TaylorSeries(q3)
    tf = reduce_dumbbell(a, series(1), b)
    flipped = reduce_dumbbell(a.negate_argument(), series(1), b)
    assert flipped.label1 == -tf.label1
    assert flipped.label2 == tf.label2


def test_flatten_examples():
    assert flatten(ThetaFactored(Fraction(3, 2), series(1), series(1)), SURG).terms == {theta_key(0, 0): Fraction(3, 2)}
    assert flatten(ThetaFactored(1, series(0, 1), series(0, 0, 1)), SURG).terms == {theta_key(1, 2): 1}


@given(st.lists(st.tuples(st.integers(-3, 3), st.lists(st.integers(-3, 3), max_size=4), st.lists(st.integers(-3, 3), max_size=4)), max_size=4))
@settings(max_examples=50)
def test_flatten_bilinear(raw):
    tfs = [ThetaFactored(c, series(*a), series(*b)) for c, a, b in raw]
    expected: dict = {}
    for tf in tfs:
        for i, x in enumerate(tf.label1.coeffs):
            for j, y in enumerate(tf.label2.coeffs):
                if i + j <= N and tf.coeff * x * y:
                    key = theta_key(i, j)
                    expected[key] = expected.get(key, 0) + tf.coeff * x * y
    assert flatten_all(tfs, SURG) == TwoLoop(expected, SURG)


def test_specialize_k0():
    lam = Fraction(7, 3)
    assert specialize_k0(TwoLoop({theta_key(0, 0): lam / 2}, SURG)) == lam / 2
    assert specialize_k0(TwoLoop({theta_key(1, 1): 1}, SURG)) == 0
    assert specialize_k0(TwoLoop({dumbbell_key(0, 0): 1}, SURG)) == 0


def test_twoloop_canonical_and_json():
    t = TwoLoop({(THETA, (2, 0, 1)): 1, (THETA, (1, 2, 0)): 1, (DUMBBELL, (3, 1, 0)): Fraction(-1, 2)}, SURG)
    assert t.terms == {(THETA, (0, 1, 2)): 2, (DUMBBELL, (1, 3, 0)): Fraction(-1, 2)}
    assert t.to_json() == [
        {"shape": "dumbbell", "legs": [1, 3, 0], "coeff": "-1/2"},
        {"shape": "theta", "legs": [0, 1, 2], "coeff": "2/1"},
    ]
    assert TwoLoop.from_json(t.to_json(), SURG) == t
    assert TwoLoop({theta_key(4, 3): 1}, SURG).is_zero()


def test_reduce_dumbbells_method():
    t = TwoLoop({dumbbell_key(1, 3): 1, theta_key(0, 0): 2}, SURG)
    assert not t.reduce_dumbbells().has_dumbbells()
    assert t.reduce_dumbbells().terms == {theta_key(0, 0): 2, theta_key(1, 3): 4}
