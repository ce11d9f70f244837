"""Change of the two-loop invariant under surgery on a boundary companion.

Two routes compute the same quantity:

* ``theta_delta_oracle`` builds W = Lambda(k, k') Lambda(k, 0)^-1 over truncated
  noncommutative series, takes Psi(W)^(-1/2), pairs the k' legs with a strut and
  reduces dumbbells.
* ``theta_delta_fast`` works with exact rational functions of t = e^k. After the
  hatted change of variables, Lambda(k, 0) - Lambda(k, k') = k' M_a + k'^2 M_b + ...
  lives on the surgered columns only, and Lambda(k, 0)^-1 = t^g adj / A_K. The
  two-k'-leg part of the exponential then collapses to a handful of factored
  thetas whose edge labels are p(t) / A_K(t).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .ncmatrix import NCMatrix, nc_inverse
from .ncseries import K, KP, NCSeries, Truncation, abelianize
from .oneloop import MultiWheel, exp_sqcup, psi_log, psi_power
from .scalars import (
    Ambiguous,
    LaurentPoly,
    NoSolution,
    a2_coefficient,
    laurent_adjugate,
    laurent_det,
    laurent_to_taylor,
    rational_reconstruct,
)
from .seifert import KEPT, SURGERED, SeifertData, alexander_matrix, alexander_polynomial, require_valid
from .twoloop import ThetaFactored, TwoLoop, flatten_all, pair_strut


class ReconstructionFailed(ArithmeticError):
    def __init__(self, message: str, result: "SurgeryResult"):
        super().__init__(message)
        self.result = result


@dataclass(frozen=True)
class FactoredTerm:
    """coeff * theta(edge1 / A_K, edge2 / A_K, empty)."""

    coeff: Fraction
    edge1: LaurentPoly
    edge2: LaurentPoly

    def to_theta(self, denominator: LaurentPoly, order: int) -> ThetaFactored:
        den = laurent_to_taylor(denominator, order)
        return ThetaFactored(
            self.coeff,
            laurent_to_taylor(self.edge1, order) / den,
            laurent_to_taylor(self.edge2, order) / den,
        )


@dataclass
class SurgeryResult:
    monomial: TwoLoop
    alexander: LaurentPoly
    casson_delta: Fraction
    pipeline: str
    order: int
    factored: list[FactoredTerm] = field(default_factory=list)
    reconstructed: bool = False
    span: int | None = None


def surgery_policy(order: int, kprime_cap: int = 2) -> Truncation:
    return Truncation.surgery(order, kprime_cap)


def kept_first(sd: SeifertData) -> SeifertData:
    """Validate for surgery and list the kept component first."""
    require_valid(sd, for_surgery=True)
    return sd.reordered([sd.index(KEPT), sd.index(SURGERED)])


def w_matrix(sd: SeifertData, policy: Truncation) -> NCMatrix:
    """W = Lambda(k, k') Lambda(k, 0)^-1."""
    sd = kept_first(sd)
    return alexander_matrix(sd, [1, 1], policy) * nc_inverse(alexander_matrix(sd, [1, 0], policy))


def casson_delta(sd: SeifertData) -> Fraction:
    require_valid(sd, for_surgery=True)
    i = sd.index(SURGERED)
    return sd.framing * a2_coefficient(alexander_polynomial(sd.block(i, i)))


def kept_alexander(sd: SeifertData) -> LaurentPoly:
    i = sd.index(KEPT)
    return alexander_polynomial(sd.block(i, i))


def theta_delta_oracle(sd: SeifertData, order: int, kprime_cap: int = 2) -> TwoLoop:
    """-f <strut/2, Psi(W)^(-1/2)> over truncated noncommutative series."""
    policy = surgery_policy(order, kprime_cap)
    mw = psi_power(w_matrix(sd, policy), Fraction(-1, 2))
    return pair_strut(mw).reduce_dumbbells().scale(-sd.framing)


def remark1_form(sd: SeifertData, order: int, kprime_cap: int = 2) -> MultiWheel:
    """(Psi(Lambda_S) / Psi(Lambda_{S_K} + identity block))^(-1/2)."""
    sd = kept_first(sd)
    policy = surgery_policy(order, kprime_cap)
    full = psi_log(alexander_matrix(sd, [1, 1], policy))
    g2 = sd.sizes[0]
    lam_k = alexander_matrix(sd, [1, 0], policy)
    n = lam_k.n
    rows = [[lam_k[i, j] if i < g2 and j < g2 else int(i == j) for j in range(n)] for i in range(n)]
    kept = psi_log(NCMatrix(rows, policy))
    return exp_sqcup((full - kept).scale(Fraction(-1, 2)))


# ---------------------------------------------------------------------------
# fast path


def _hatted_laurent(sd: SeifertData) -> list[list[LaurentPoly]]:
    """Lambda-hat(k, 0) over t: S t^-1 - S* on kept columns, S - S* on surgered ones."""
    S = sd.seifert
    n = len(S)
    nk = sd.sizes[0]
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            if j < nk:
                row.append(LaurentPoly.from_t({-1: S[i][j], 0: -S[j][i]}))
            else:
                row.append(LaurentPoly.const(S[i][j] - S[j][i]))
        out.append(row)
    return out


def _kprime_coefficients(sd: SeifertData) -> tuple[list[list[Fraction]], list[list[Fraction]]]:
    """M_a, M_b with Lambda-hat(k,0) - Lambda-hat(k,k') = k' M_a + k'^2 M_b + O(k'^3)."""
    S = sd.seifert
    n = len(S)
    nk = sd.sizes[0]
    Ma = [[Fraction(S[i][j] + S[j][i], 2) if j >= nk else Fraction(0) for j in range(n)] for i in range(n)]
    Mb = [[Fraction(S[j][i] - S[i][j], 8) if j >= nk else Fraction(0) for j in range(n)] for i in range(n)]
    return Ma, Mb


def _lincomb(polys: Sequence[LaurentPoly], coeffs: Sequence[Fraction]) -> LaurentPoly:
    out = LaurentPoly.const(0)
    for p, c in zip(polys, coeffs):
        if c:
            out = out + p * c
    return out


def fast_factored(sd: SeifertData) -> tuple[LaurentPoly, list[FactoredTerm]]:
    """Exact factored form of -f <strut/2, Psi(W)^(-1/2)>; edge labels over A_K."""
    sd = kept_first(sd)
    f = sd.framing
    A = kept_alexander(sd)
    nums = _exact_numerators(sd)
    U, h = nums["U"], nums["h"]
    surg = range(sd.sizes[0], len(sd.seifert))
    g_lab = LaurentPoly.const(0)
    for j in surg:
        g_lab = g_lab + U[j, j]
    odd = g_lab - g_lab.invert_variable()
    terms = [FactoredTerm(Fraction(-f, 2), h, A)]
    for l in surg:
        for m in surg:
            terms.append(FactoredTerm(Fraction(-f, 4), U[l, m], U[m, l]))
    terms.append(FactoredTerm(Fraction(-f, 8), odd, odd))
    terms = [t for t in terms if not (t.edge1.is_zero() or t.edge2.is_zero())]
    return A, terms


def series_labels(sd: SeifertData, order: int) -> dict[str, list]:
    """Edge-label series of the fast path computed by truncated series inversion.

    Independent of the adjugate: used to reconstruct the numerators.
    """
    sd = kept_first(sd)
    policy = Truncation(order)
    lam = alexander_matrix(sd, [1, 0], policy, hatted=True, letters=[K, KP])
    Q = nc_inverse(lam)
    Ma, Mb = _kprime_coefficients(sd)
    nk, n = sd.sizes[0], len(sd.seifert)
    surg = range(nk, n)

    def qm(M, l, m):
        acc = NCSeries.zero(policy)
        for i in range(n):
            if M[i][m]:
                acc = acc + Q[l, i].scale(M[i][m])
        return abelianize(acc)

    U = {(l, m): qm(Ma, l, m) for l in surg for m in surg}
    h = None
    for j in surg:
        h = qm(Mb, j, j) if h is None else h + qm(Mb, j, j)
    return {"U": U, "h": h}


def _reconstruct(series, A: LaurentPoly, span: int) -> LaurentPoly:
    return rational_reconstruct(series, A, span, integral=True)


def reconstruct_numerators(sd: SeifertData, order: int, span: int | None = None) -> dict:
    """Numerators p with label = p / A_K, recovered from truncated series."""
    sd_k = kept_first(sd)
    A = kept_alexander(sd_k)
    g = sd_k.sizes[0] // 2
    span = g if span is None else span
    labels = series_labels(sd_k, order)
    out = {"U": {lm: _reconstruct(s, A, span) for lm, s in labels["U"].items()}}
    out["h"] = _reconstruct(labels["h"], A, span) if labels["h"] is not None else LaurentPoly.const(0)
    return out


def theta_delta_fast(sd: SeifertData, order: int, span: int | None = None) -> SurgeryResult:
    """Factored computation; numerators are re-derived from truncated series as a check."""
    sd_k = kept_first(sd)
    A, terms = fast_factored(sd_k)
    policy = surgery_policy(order)
    mono = flatten_all((t.to_theta(A, order) for t in terms), policy)
    g = sd_k.sizes[0] // 2
    span = g if span is None else span
    result = SurgeryResult(mono, A, casson_delta(sd_k), "fast", order, terms, False, span)
    try:
        rec = reconstruct_numerators(sd_k, order, span)
    except (Ambiguous, NoSolution) as exc:
        raise ReconstructionFailed(f"reconstruction at order {order}, span {span}: {exc}", result) from None
    nk, n = sd_k.sizes[0], len(sd_k.seifert)
    exact = _exact_numerators(sd_k)
    if rec["U"] != exact["U"] or (n > nk and rec["h"] != exact["h"]):
        raise ReconstructionFailed(f"reconstructed numerators disagree at order {order}, span {span}", result)
    result.reconstructed = True
    return result


def _exact_numerators(sd_k: SeifertData) -> dict:
    """Numerators over A_K from the exact adjugate; asserts det = t^-g A_K."""
    nk, n = sd_k.sizes[0], len(sd_k.seifert)
    g = nk // 2
    lam = _hatted_laurent(sd_k)
    if laurent_det(lam) != kept_alexander(sd_k).shift_t(-g):
        raise ArithmeticError("hatted determinant differs from t^-g A_K")
    num = [[p.shift_t(g) for p in row] for row in laurent_adjugate(lam)]
    Ma, Mb = _kprime_coefficients(sd_k)
    surg = range(nk, n)
    U = {(l, m): _lincomb(num[l], [Ma[i][m] for i in range(n)]) for l in surg for m in surg}
    h = LaurentPoly.const(0)
    for j in surg:
        h = h + _lincomb(num[j], [Mb[i][j] for i in range(n)])
    return {"U": U, "h": h}


def theta_delta(sd: SeifertData, order: int, pipeline: str = "both", kprime_cap: int = 2, span: int | None = None):
    """Run the requested pipeline(s); returns (result, agree) with agree None for a single pipeline."""
    if pipeline not in ("oracle", "fast", "both"):
        raise ValueError(f"unknown pipeline {pipeline!r}")
    if pipeline == "oracle":
        mono = theta_delta_oracle(sd, order, kprime_cap)
        sd_k = kept_first(sd)
        return SurgeryResult(mono, kept_alexander(sd_k), casson_delta(sd_k), "oracle", order), None
    fast = theta_delta_fast(sd, order, span)
    if pipeline == "fast":
        return fast, None
    oracle = theta_delta_oracle(sd, order, kprime_cap)
    fast.pipeline = "both"
    return fast, oracle == fast.monomial
