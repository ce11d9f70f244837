"""Seeded random inputs for the property suites."""
from __future__ import annotations

import random
from typing import Sequence

from .bandtwist import NEGATIVE, POSITIVE, BandTwistData
from .ncmatrix import NCMatrix
from .ncseries import K, KP, NCSeries, Truncation
from .seifert import KEPT, SURGERED, Component, SeifertData


def unimodular(rng: random.Random, n: int, steps: int = 6) -> list[list[int]]:
    """Product of random elementary integer row operations."""
    P = [[int(i == j) for j in range(n)] for i in range(n)]
    if n < 2:
        if n == 1 and rng.random() < 0.5:
            P[0][0] = -1
        return P
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-1, 1])
        P[i] = [a + c * b for a, b in zip(P[i], P[j])]
    return P


def _mul(A, B):
    return [[sum(A[i][l] * B[l][j] for l in range(len(B))) for j in range(len(B[0]))] for i in range(len(A))]


def _transpose(A):
    return [list(r) for r in zip(*A)]


def conjugate(P, S):
    """P S P*."""
    if not S:
        return []
    return _mul(_mul(P, S), _transpose(P))


def seifert_block(rng: random.Random, genus: int, bound: int = 2, basis_change: bool = True) -> list[list[int]]:
    """Valid single-component block: symmetric part plus the standard skew pairing."""
    n = 2 * genus
    S = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            S[i][j] = S[j][i] = rng.randint(-bound, bound)
    for a in range(genus):
        S[2 * a][2 * a + 1] += 1
    if basis_change and n:
        S = conjugate(unimodular(rng, n, steps=3), S)
    return S


def two_component(
    rng: random.Random, kept_genus: int, surgered_genus: int, framing: int | None = None, bound: int = 2
) -> SeifertData:
    """Random boundary-link data with the kept component listed first."""
    SK = seifert_block(rng, kept_genus, bound)
    SP = seifert_block(rng, surgered_genus, bound)
    nk, np_ = 2 * kept_genus, 2 * surgered_genus
    B = [[rng.randint(-bound, bound) for _ in range(np_)] for _ in range(nk)]
    n = nk + np_
    S = [[0] * n for _ in range(n)]
    for i in range(nk):
        for j in range(nk):
            S[i][j] = SK[i][j]
        for j in range(np_):
            S[i][nk + j] = B[i][j]
            S[nk + j][i] = B[i][j]
    for i in range(np_):
        for j in range(np_):
            S[nk + i][nk + j] = SP[i][j]
    f = framing if framing is not None else rng.choice([-1, 1])
    comps = (Component("K", kept_genus, KEPT), Component("K'", surgered_genus, SURGERED))
    return SeifertData(comps, tuple(map(tuple, S)), f)


def block_diagonal_unimodular(rng: random.Random, sizes: Sequence[int]) -> list[list[int]]:
    n = sum(sizes)
    P = [[0] * n for _ in range(n)]
    o = 0
    for s in sizes:
        Q = unimodular(rng, s)
        for i in range(s):
            for j in range(s):
                P[o + i][o + j] = Q[i][j]
        o += s
    return P


def change_basis(sd: SeifertData, P) -> SeifertData:
    return SeifertData(sd.components, tuple(map(tuple, conjugate(P, [list(r) for r in sd.seifert]))), sd.framing)


def nc_matrix(
    rng: random.Random, n: int, policy: Truncation, degree: int = 2, letters: Sequence[str] = (K, KP), density: float = 0.5
) -> NCMatrix:
    """Unimodular integer augmentation plus random words of length 1..degree."""
    A = unimodular(rng, n)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            terms = {"": A[i][j]}
            for _ in range(3):
                if rng.random() < density:
                    w = "".join(rng.choice(letters) for _ in range(rng.randint(1, degree)))
                    terms[w] = terms.get(w, 0) + rng.randint(-2, 2)
            row.append(NCSeries(terms, policy))
        rows.append(row)
    return NCMatrix(rows, policy)


def band_twist(rng: random.Random, genus: int, bound: int = 2, direction: str | None = None) -> BandTwistData:
    S = seifert_block(rng, genus)
    b = [rng.randint(-bound, bound) for _ in range(2 * genus)]
    return BandTwistData(tuple(map(tuple, S)), tuple(b), direction or rng.choice([POSITIVE, NEGATIVE]))
