import random
from fractions import Fraction
from math import prod

from hypothesis import given, settings, strategies as st

from lmotheta.iota import (
    BLOB,
    TRI,
    Multigraph,
    OpenDiagram,
    blob_factor,
    canonical_form,
    casson_pipeline,
    double_factorial,
    iota,
    perfect_matchings,
    shape_name,
)


def loop_polynomial(n: int, x: int) -> int:
    """Oracle: sum over matchings of 2n strut legs of x^(cycles) is x(x+2)...(x+2n-2)."""
    return prod(x + 2 * i for i in range(n))


def test_perfect_matchings_count():
    for n in range(1, 6):
        ms = list(perfect_matchings(list(range(2 * n))))
        assert len(ms) == double_factorial(2 * n - 1)
        assert len({frozenset(m) for m in ms}) == len(ms)


def test_iota_examples():
    assert iota(2, OpenDiagram(struts=1, wheels=(2,))).terms == {"theta": -2}
    assert iota(1, OpenDiagram(wheels=(2,))).terms == {"theta": 1}
    assert iota(1, OpenDiagram(struts=1)).terms == {"1": -2}


def test_iota_wrong_leg_count_is_zero():
    assert iota(2, OpenDiagram(struts=1)).terms == {}
    assert iota(1, OpenDiagram(struts=1, wheels=(2,))).terms == {}
    assert iota(3, OpenDiagram(wheels=(3,))).terms == {}


def test_iota_pure_struts():
    for n in range(1, 6):
        assert iota(n, OpenDiagram(struts=n)).terms == {"1": loop_polynomial(n, -2 * n)}
        assert loop_polynomial(n, -2 * n) == (-2) ** n * prod(range(1, n + 1))


def test_blob_factor():
    for n in range(1, 6):
        got = iota(n, OpenDiagram(struts=n - 1, blob_degree=n))
        assert got.terms == {"blob": blob_factor(n)}
        assert blob_factor(n) == (-1) ** (n - 1) * 2 ** (n - 1) * prod(range(1, n))


def test_blob_degree_cutoff():
    out = iota(2, OpenDiagram(struts=1, blob_degree=3))
    assert out.terms == {}
    assert out.discarded == 3


def test_closed_wheel_shapes():
    assert shape_name(canonical_form(Multigraph([TRI, TRI], [(0, 1)] * 3))) == "theta"
    assert shape_name(canonical_form(Multigraph([BLOB], [(0, 0)]))) == "blob"
    assert shape_name(canonical_form(Multigraph([], []))) == "1"
    k4 = Multigraph([TRI] * 4, [(a, b) for a in range(4) for b in range(a + 1, 4)])
    doubled_square = Multigraph([TRI] * 4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 1), (2, 3)])
    out = iota(2, OpenDiagram(wheels=(4,)))
    assert out.terms == {shape_name(canonical_form(k4)): 1, shape_name(canonical_form(doubled_square)): 2}


@given(st.integers(0, 10**6))
@settings(max_examples=30, deadline=None)
def test_canonical_form_relabel_invariant(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 7)
    colors = [rng.choice([TRI, TRI, BLOB]) for _ in range(n)]
    edges = [(rng.randrange(n), rng.randrange(n)) for _ in range(rng.randint(0, 10))]
    perm = list(range(n))
    rng.shuffle(perm)
    moved = Multigraph([colors[perm.index(i)] for i in range(n)], [(perm[a], perm[b]) for a, b in edges])
    assert canonical_form(Multigraph(colors, edges)) == canonical_form(moved)


def test_canonical_form_distinguishes():
    path = Multigraph([TRI] * 4, [(0, 1), (1, 2), (2, 3)])
    star = Multigraph([TRI] * 4, [(0, 1), (0, 2), (0, 3)])
    assert canonical_form(path) != canonical_form(star)


def test_casson_pipeline_examples():
    for kappa in (0, Fraction(1, 48), Fraction(7, 3)):
        assert casson_pipeline(1, 0, kappa, 1, 2) == 1
    assert casson_pipeline(0, Fraction(5, 3), 1, -1, 3) == Fraction(5, 3)


def test_kappa_cancellation_grid():
    rng = random.Random(9)
    for _ in range(5):
        lam, a2 = Fraction(rng.randint(-9, 9), rng.randint(1, 5)), rng.randint(-4, 4)
        for n in (1, 2, 3):
            for kappa in (0, Fraction(1, 48), Fraction(7, 3)):
                for f in (-1, 1):
                    assert casson_pipeline(a2, lam, kappa, f, n) == lam + f * a2
