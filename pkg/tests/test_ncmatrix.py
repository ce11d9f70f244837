import random
from fractions import Fraction

import pytest
import sympy

from lmotheta import randgen
from lmotheta.ncmatrix import (
    NCMatrix,
    ShapeMismatch,
    SingularAugmentation,
    augment,
    build_from_blocks,
    det_rational,
    nc_inverse,
    rat_inverse,
)
from lmotheta.ncseries import K, KP, NCSeries, Truncation

P4 = Truncation(4)
P6 = Truncation(6)


def test_augment_examples():
    assert augment(NCMatrix.identity(2, P4)) == ((1, 0), (0, 1))
    M = NCMatrix([[NCSeries({"": 1, K: 1}, P4), NCSeries.letter(KP, P4)], [0, NCSeries({"": 1, K: -1}, P4)]], P4)
    assert augment(M) == ((1, 0), (0, 1))


def test_augment_homomorphism():
    rng = random.Random(1)
    A, B = randgen.nc_matrix(rng, 3, P4), randgen.nc_matrix(rng, 3, P4)
    lhs = augment(A * B)
    a, b = augment(A), augment(B)
    assert lhs == tuple(tuple(sum(a[i][l] * b[l][j] for l in range(3)) for j in range(3)) for i in range(3))


def test_det_rational():
    assert det_rational(tuple(tuple(int(i == j) for j in range(4)) for i in range(4))) == 1
    assert det_rational(((0, -1), (1, 0))) == 1
    rng = random.Random(2)
    A = [[rng.randint(-6, 6) for _ in range(5)] for _ in range(5)]
    assert det_rational(A) == sympy.Matrix(A).det(method="berkowitz")


def test_nc_inverse_examples():
    assert nc_inverse(NCMatrix.identity(3, P4)) == NCMatrix.identity(3, P4)
    M = NCMatrix([[NCSeries({"": 1, K: -1}, P4)]], P4)
    assert nc_inverse(M)[0, 0] == NCSeries({"k" * m: 1 for m in range(5)}, P4)


def test_nc_inverse_random_residual():
    rng = random.Random(4)
    for _ in range(3):
        M = randgen.nc_matrix(rng, 4, P6)
        X = nc_inverse(M)
        assert M * X == NCMatrix.identity(4, P6)
        assert X * M == NCMatrix.identity(4, P6)
        assert augment(X) == rat_inverse(augment(M))


def test_nc_inverse_of_product():
    rng = random.Random(5)
    A, B = randgen.nc_matrix(rng, 3, P4), randgen.nc_matrix(rng, 3, P4)
    assert nc_inverse(A * B) == nc_inverse(B) * nc_inverse(A)


def test_nc_inverse_block_lower_triangular():
    rng = random.Random(6)
    M = randgen.nc_matrix(rng, 3, P4)
    rows = [list(r) for r in M.rows]
    rows[0][1] = rows[0][2] = NCSeries.zero(P4)
    rows[0][0] = NCSeries({"": 1, K: 2}, P4)
    rows[1][1], rows[1][2] = rows[1][1] - rows[1][1].constant_term() + 1, rows[1][2] - rows[1][2].constant_term()
    rows[2][1], rows[2][2] = rows[2][1] - rows[2][1].constant_term(), rows[2][2] - rows[2][2].constant_term() + 1
    X = nc_inverse(NCMatrix(rows, P4))
    assert X[0, 1].is_zero() and X[0, 2].is_zero()


def test_singular_augmentation():
    with pytest.raises(SingularAugmentation):
        nc_inverse(NCMatrix([[NCSeries.letter(K, P4)]], P4))


def test_shape_checks():
    with pytest.raises(ShapeMismatch):
        NCMatrix([[1, 2]], P4)
    with pytest.raises(ShapeMismatch):
        build_from_blocks([1, 1], {(0, 1): [[1, 2]]}, P4)


def test_build_from_blocks():
    A = [[1, 2], [3, 5]]
    C = [[NCSeries({"": 1, K: 1}, P4)]]
    M = build_from_blocks([2, 1], {(0, 0): A, (1, 1): C, (0, 1): [[7], [0]]}, P4)
    assert augment(M) == ((1, 2, 7), (3, 5, 0), (0, 0, 1))
    assert M[2, 0].is_zero()
    E = build_from_blocks([0, 2, 0], {(1, 1): A}, P4)
    assert E == NCMatrix.from_rat(A, P4)


def test_bordered_band_matrix_assembly():
    from lmotheta.bandtwist import BandTwistData, assemble_seifert

    S_K = ((-1, 1), (0, -1))
    btd = BandTwistData(S_K, (2, -1), "positive")
    blocks = {(0, 0): S_K, (0, 1): [[-1, 2], [0, -1]], (1, 0): [[-1, 0], [2, -1]], (1, 1): [[0, -1], [0, 0]]}
    M = build_from_blocks([2, 2], blocks, P4)
    assert augment(M) == tuple(tuple(Fraction(x) for x in r) for r in assemble_seifert(btd).seifert)
