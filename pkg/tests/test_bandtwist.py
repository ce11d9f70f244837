import random

import pytest

from lmotheta import randgen
from lmotheta.bandtwist import (
    NEGATIVE,
    POSITIVE,
    BandTwistData,
    assemble_seifert,
    leading_part,
    scaled_linking,
    theta_delta_twist,
    z_matrix,
)
from lmotheta.ncmatrix import NCMatrix, augment, rat_identity
from lmotheta.ncseries import KP, Truncation, substitute_zero
from lmotheta.scalars import LaurentPoly
from lmotheta.seifert import InvalidBlock, alexander_polynomial, validate
from lmotheta.surgery import casson_delta, theta_delta_oracle
from lmotheta.twoloop import specialize_k0

TREFOIL_BLOCK = ((-1, 1), (0, -1))
P6 = Truncation.surgery(6, 2)


def test_invalid_inputs():
    with pytest.raises(InvalidBlock):
        BandTwistData(TREFOIL_BLOCK, (1,), POSITIVE)
    with pytest.raises(InvalidBlock):
        BandTwistData(((1, 0), (0, 1)), (1, 0), POSITIVE)
    with pytest.raises(InvalidBlock):
        BandTwistData(TREFOIL_BLOCK, (1, 0), "sideways")
    with pytest.raises(InvalidBlock):
        BandTwistData((), (), POSITIVE)


def test_framing_from_direction():
    assert BandTwistData(TREFOIL_BLOCK, (1, 0), POSITIVE).framing == -1
    assert BandTwistData(TREFOIL_BLOCK, (1, 0), NEGATIVE).framing == 1
    assert BandTwistData(TREFOIL_BLOCK, (1, 0), POSITIVE).reversed().direction == NEGATIVE


def test_assemble_seifert():
    btd = BandTwistData(TREFOIL_BLOCK, (2, -1), POSITIVE)
    sd = assemble_seifert(btd)
    assert sd.seifert == ((-1, 1, -1, 2), (0, -1, 0, -1), (-1, 0, 0, -1), (2, -1, 0, 0))
    assert validate(sd, for_surgery=True).ok
    assert alexander_polynomial(sd.block(1, 1)) == LaurentPoly.const(1)
    assert casson_delta(sd) == 0


def test_assembly_skew_part_block_diagonal():
    rng = random.Random(1)
    for g in (1, 2):
        btd = randgen.band_twist(rng, g)
        S = assemble_seifert(btd).seifert
        n = len(S)
        skew = [[S[i][j] - S[j][i] for j in range(n)] for i in range(n)]
        assert all(skew[i][j] == 0 for i in range(n - 2) for j in range(n - 2, n))
        assert [r[n - 2 :] for r in skew[n - 2 :]] == [[0, -1], [1, 0]]


def test_z_matrix_examples():
    assert z_matrix(BandTwistData(TREFOIL_BLOCK, (0, 0)), P6) == NCMatrix.identity(2, P6)
    btd = randgen.band_twist(random.Random(2), 2)
    Z = z_matrix(btd, P6)
    assert augment(Z) == rat_identity(4)
    assert Z.map(lambda a: substitute_zero(a, KP)) == NCMatrix.identity(4, P6)


def test_zero_linking_gives_zero():
    assert theta_delta_twist(BandTwistData(TREFOIL_BLOCK, (0, 0)), 6).is_zero()


def test_closed_form_matches_general_formula():
    rng = random.Random(3)
    for g in (1, 1, 2):
        for direction in (POSITIVE, NEGATIVE):
            btd = randgen.band_twist(rng, g, direction=direction)
            delta = theta_delta_twist(btd, 8)
            assert delta == theta_delta_oracle(assemble_seifert(btd), 8)
            assert specialize_k0(delta) == 0


def test_reverse_twist_negates():
    btd = randgen.band_twist(random.Random(4), 1)
    assert theta_delta_twist(btd.reversed(), 6) == -theta_delta_twist(btd, 6)


def test_linking_scaling():
    rng = random.Random(5)
    for _ in range(3):
        btd = randgen.band_twist(rng, 1)
        one = leading_part(theta_delta_twist(btd, 6))
        two = leading_part(theta_delta_twist(scaled_linking(btd, 2), 6))
        assert two == {legs: 4 * c for legs, c in one.items()}


def test_trefoil_fixture():
    import json
    from pathlib import Path

    obj = json.loads((Path(__file__).parent / "data" / "band_twist.json").read_text())
    btd = BandTwistData.from_json(obj)
    assert btd.b == (1, 2)
    delta = theta_delta_twist(btd, 6)
    assert delta == theta_delta_oracle(assemble_seifert(btd), 6)
    assert not delta.is_zero()
