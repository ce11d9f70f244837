"""Full twist of a Seifert-surface band, realized as surgery on a genus-one companion."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .ncmatrix import NCMatrix, nc_inverse
from .ncseries import K, KP, NCSeries, Truncation, exp_variable
from .oneloop import psi_power
from .scalars import det_exact
from .seifert import KEPT, SURGERED, Component, InvalidBlock, SeifertData, alexander_matrix
from .twoloop import TwoLoop, pair_strut

POSITIVE = "positive"
NEGATIVE = "negative"

# Seifert block of the companion surface in the basis (a, b) with lk(b+, b) = 0
CORNER = ((0, -1), (0, 0))


@dataclass(frozen=True)
class BandTwistData:
    seifert_k: tuple[tuple[int, ...], ...]
    b: tuple[int, ...]
    direction: str = POSITIVE

    def __post_init__(self):
        object.__setattr__(self, "seifert_k", tuple(tuple(int(x) for x in r) for r in self.seifert_k))
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))
        n = len(self.seifert_k)
        if n < 2 or n % 2 or any(len(r) != n for r in self.seifert_k):
            raise InvalidBlock("kept Seifert block must be square of even size at least 2")
        if len(self.b) != n:
            raise InvalidBlock(f"linking vector has length {len(self.b)}, expected {n}")
        if self.direction not in (POSITIVE, NEGATIVE):
            raise InvalidBlock(f"direction must be {POSITIVE!r} or {NEGATIVE!r}")
        skew = [[self.seifert_k[i][j] - self.seifert_k[j][i] for j in range(n)] for i in range(n)]
        if det_exact(skew) != 1:
            raise InvalidBlock("kept block has det(S - S*) != 1")

    @property
    def framing(self) -> int:
        return -1 if self.direction == POSITIVE else 1

    @property
    def size(self) -> int:
        return len(self.seifert_k)

    def reversed(self) -> "BandTwistData":
        return BandTwistData(self.seifert_k, self.b, NEGATIVE if self.direction == POSITIVE else POSITIVE)

    @classmethod
    def from_json(cls, obj: Mapping) -> "BandTwistData":
        return cls(tuple(map(tuple, obj["seifert_k"])), tuple(obj["b"]), obj.get("direction", POSITIVE))


def assemble_seifert(btd: BandTwistData) -> SeifertData:
    """Bordered matrix [[S_K, (-p*, b*)], [(-p; b), CORNER]]."""
    n = btd.size
    border = [[-int(i == 0), btd.b[i]] for i in range(n)]
    S = [list(r) + border[i] for i, r in enumerate(btd.seifert_k)]
    S.append([border[i][0] for i in range(n)] + list(CORNER[0]))
    S.append([border[i][1] for i in range(n)] + list(CORNER[1]))
    comps = (Component("K", n // 2, KEPT), Component("K'", 1, SURGERED))
    return SeifertData(comps, tuple(map(tuple, S)), btd.framing)


def _bracket(v: str, policy: Truncation) -> NCSeries:
    """e^{v/2} - e^{-v/2}."""
    return exp_variable(v, Fraction(1, 2), policy) - exp_variable(v, Fraction(-1, 2), policy)


def z_matrix(btd: BandTwistData, policy: Truncation) -> NCMatrix:
    """I - Lambda_{S_K}^-1 <k'> (e^{k'/2} b* p - e^{-k'/2} p* b) <k>."""
    n = btd.size
    sk = SeifertData((Component("K", n // 2, KEPT),), btd.seifert_k)
    lam_inv = nc_inverse(alexander_matrix(sk, [1], policy, letters=[K]))
    bkp = _bracket(KP, policy)
    plus = bkp * exp_variable(KP, Fraction(1, 2), policy)
    minus = bkp * exp_variable(KP, Fraction(-1, 2), policy)
    b = btd.b
    mid = [
        [plus.scale(b[i] * int(j == 0)) - minus.scale(int(i == 0) * b[j]) for j in range(n)] for i in range(n)
    ]
    bk = _bracket(K, policy)
    right = NCMatrix([[bk if i == j else 0 for j in range(n)] for i in range(n)], policy)
    return NCMatrix.identity(n, policy) - lam_inv * NCMatrix(mid, policy) * right


def theta_delta_twist(btd: BandTwistData, order: int, kprime_cap: int = 2) -> TwoLoop:
    """-f <strut/2, Psi(Z)^(-1/2)> with dumbbells reduced."""
    policy = Truncation.surgery(order, kprime_cap)
    mw = psi_power(z_matrix(btd, policy), Fraction(-1, 2))
    return pair_strut(mw).reduce_dumbbells().scale(-btd.framing)


def scaled_linking(btd: BandTwistData, m: int) -> BandTwistData:
    return BandTwistData(btd.seifert_k, tuple(m * x for x in btd.b), btd.direction)


def leading_part(t: TwoLoop) -> dict[tuple[int, ...], Fraction]:
    """Coefficients of thetas with exactly one leg-free edge and two legged edges."""
    return {legs: c for (shape, legs), c in t.terms.items() if shape == "theta" and legs[0] == 0 and legs[1] >= 1}

