"""Seeded property suites shared by ``lmotheta verify`` and the acceptance tests."""
from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from . import randgen
from .bandtwist import assemble_seifert, theta_delta_twist
from .iota import OpenDiagram, blob_factor, casson_pipeline, iota
from .ncmatrix import NCMatrix, augment, det_rational, rat_inverse
from .ncseries import K, KP, NCSeries, Truncation, abelianize, substitute_zero
from .oneloop import abelianize_psi, psi_log, psi_power
from .scalars import TaylorSeries, laurent_to_taylor
from .seifert import Component, SeifertData, alexander_matrix, alexander_polynomial
from .surgery import casson_delta, reconstruct_numerators, theta_delta, theta_delta_fast, theta_delta_oracle
from .twoloop import TwoLoop, specialize_k0, theta_key

SUITES = ("dlp", "basis", "oracle", "bandtwist", "iota", "rationality")

TREFOIL = ((-1, 1), (0, -1))


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class SuiteResult:
    suite: str
    checks: list[Check] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(passed), detail))

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "checks": len(self.checks),
            "failures": [{"name": c.name, "detail": c.detail} for c in self.failures()],
        }


def _map(fn: Callable, items: Iterable, threads: int) -> list:
    items = list(items)
    if threads <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# shared inputs


def oracle_inputs(seed: int, count: int = 20) -> list[SeifertData]:
    """Random two-component data of sizes 4x4 and 6x6, framings alternating."""
    rng = random.Random(seed)
    shapes = [(1, 1), (2, 1), (1, 2)]
    return [
        randgen.two_component(rng, *shapes[i % len(shapes)], framing=1 if i % 2 == 0 else -1) for i in range(count)
    ]


def bandtwist_inputs(seed: int, count: int = 12):
    rng = random.Random(seed + 1)
    return [
        randgen.band_twist(rng, 1 + (i // 2) % 2, direction="positive" if i % 2 == 0 else "negative")
        for i in range(count)
    ]


def split_trefoil() -> SeifertData:
    comps = (Component("K", 0, "kept"), Component("K'", 1, "surgered"))
    return SeifertData(comps, TREFOIL, 1)


# ---------------------------------------------------------------------------
# DLP


def _block_triangular(rng: random.Random, policy: Truncation) -> tuple[NCMatrix, NCMatrix]:
    """[[A, B], [0, C]] with A 2x2, C 1x1 and unimodular augmentations, plus diag(A, C)."""
    M = randgen.nc_matrix(rng, 3, policy)
    top = randgen.unimodular(rng, 2)
    rows = [[a - a.constant_term() for a in r] for r in M.rows]
    for a in range(2):
        for b in range(2):
            rows[a][b] = rows[a][b] + top[a][b]
        rows[2][a] = NCSeries.zero(policy)
    rows[2][2] = rows[2][2] + rng.choice([-1, 1])
    full = NCMatrix(rows, policy)
    diag = NCMatrix([[rows[i][j] if (i < 2) == (j < 2) else 0 for j in range(3)] for i in range(3)], policy)
    return full, diag


def _commutative_det(M: list[list[TaylorSeries]]) -> TaylorSeries:
    """Cofactor expansion along the first row."""
    n = len(M)
    if n == 1:
        return M[0][0]
    total = None
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in M[1:]]
        term = M[0][j] * _commutative_det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def _dlp_instance(args) -> list[tuple[str, bool, str]]:
    seed, i, order = args
    rng = random.Random(seed * 1000 + i)
    policy = Truncation(order)
    out = []
    M1 = randgen.nc_matrix(rng, 3, policy)
    M2 = randgen.nc_matrix(rng, 3, policy)
    lhs, rhs = psi_log(M1 * M2), psi_log(M1) + psi_log(M2)
    out.append((f"multiplicativity #{i}", lhs == rhs, ""))
    full, diag = _block_triangular(rng, policy)
    out.append((f"block triangular #{i}", psi_log(full) == psi_log(diag), ""))
    if i % 10 == 0:
        s = Fraction(-1, 2)
        out.append((f"block triangular power #{i}", psi_power(full, s) == psi_power(diag, s), ""))
    const = NCMatrix.from_rat(randgen.unimodular(rng, 3), policy)
    out.append((f"constant #{i}", psi_log(const).is_zero(), ""))
    P = NCMatrix.from_rat(randgen.unimodular(rng, 3), policy)
    Pinv = NCMatrix.from_rat(tuple(tuple(r) for r in rat_inverse(augment(P))), policy)
    out.append((f"conjugation #{i}", psi_log(P * M1 * Pinv) == psi_log(M1), ""))
    graded = psi_log(M1).restrict(KP, 0)
    out.append((f"grading #{i}", graded == psi_log(M1.map(lambda a: substitute_zero(a, KP))), ""))
    Mk = randgen.nc_matrix(rng, 3, policy, letters=(K,))
    comm = [[abelianize(Mk[a, b]) for b in range(3)] for a in range(3)]
    expected = _commutative_det(comm).truncate(order)
    expected = TaylorSeries([c / det_rational(augment(Mk)) for c in expected.coeffs])
    out.append((f"normalized determinant #{i}", abelianize_psi(Mk) == expected, ""))
    return out


def suite_dlp(seed: int = 7, order: int = 6, count: int = 50, threads: int = 1) -> SuiteResult:
    res = SuiteResult("dlp")
    t = time.perf_counter()
    for batch in _map(_dlp_instance, [(seed, i, order) for i in range(count)], threads):
        for name, ok, detail in batch:
            res.add(name, ok, detail)
    policy = Truncation(order)
    x = TaylorSeries([1, 2, -1, 3, 0, 5, 1], order)
    one = NCMatrix([[NCSeries.from_taylor(x, K, policy)]], policy)
    res.add("1x1 normalized determinant", abelianize_psi(one) == x.truncate(order))
    res.seconds = time.perf_counter() - t
    return res


# ---------------------------------------------------------------------------
# basis invariance and the abelian bridge


def suite_basis(seed: int = 7, order: int = 6, count: int = 20, bridge_order: int = 8, threads: int = 1) -> SuiteResult:
    res = SuiteResult("basis")
    t = time.perf_counter()
    rng = random.Random(seed)
    policy = Truncation(order)
    for i in range(count):
        sd = randgen.two_component(rng, 1 + i % 2, 1)
        P = randgen.block_diagonal_unimodular(rng, sd.sizes)
        sd2 = randgen.change_basis(sd, P)
        a = psi_log(alexander_matrix(sd, [1, 1], policy))
        b = psi_log(alexander_matrix(sd2, [1, 1], policy))
        res.add(f"basis invariance #{i}", a == b)
    bp = Truncation(bridge_order)
    blocks = [TREFOIL] + [randgen.seifert_block(rng, 1 + i % 2) for i in range(10)]
    for i, blk in enumerate(blocks):
        sd = SeifertData((Component("K", len(blk) // 2),), tuple(map(tuple, blk)))
        lhs = abelianize_psi(alexander_matrix(sd, [1], bp, letters=[K]))
        rhs = laurent_to_taylor(alexander_polynomial(blk), bridge_order)
        res.add(f"abelian bridge #{i}", lhs == rhs, f"block {blk}")
    res.seconds = time.perf_counter() - t
    return res


# ---------------------------------------------------------------------------
# surgery


def _oracle_instance(args) -> list[tuple[str, bool, str]]:
    i, sd, order, cap_check = args
    out = []
    oracle = theta_delta_oracle(sd, order)
    fast = theta_delta_fast(sd, order).monomial
    out.append((f"fast = oracle #{i}", fast == oracle, f"S = {sd.seifert}, f = {sd.framing}"))
    expect = casson_delta(sd) / 2
    out.append((f"casson specialization #{i}", specialize_k0(oracle) == expect, f"expected {expect}"))
    if cap_check:
        out.append((f"k' cap 2 = cap 4 #{i}", theta_delta_oracle(sd, order, 4) == oracle, ""))
    return out


def split_trefoil_checks(res: SuiteResult, order: int = 8) -> None:
    sd = split_trefoil()
    policy = Truncation.surgery(order)
    expected = TwoLoop({theta_key(0, 0, 0): Fraction(1, 2)}, policy)
    fast, agree = theta_delta(sd, order, "both")
    res.add("split trefoil value", fast.monomial == expected and agree, str(fast.monomial))
    res.add("split trefoil casson", casson_delta(sd) == 1, str(casson_delta(sd)))


def suite_oracle(seed: int = 7, order: int = 8, count: int = 20, cap_check: bool = True, threads: int = 1) -> SuiteResult:
    res = SuiteResult("oracle")
    t = time.perf_counter()
    args = [(i, sd, order, cap_check) for i, sd in enumerate(oracle_inputs(seed, count))]
    for batch in _map(_oracle_instance, args, threads):
        for name, ok, detail in batch:
            res.add(name, ok, detail)
    split_trefoil_checks(res, order)
    res.seconds = time.perf_counter() - t
    return res


def _twist_instance(args) -> list[tuple[str, bool, str]]:
    i, btd, order = args
    sd = assemble_seifert(btd)
    twist = theta_delta_twist(btd, order)
    general = theta_delta_oracle(sd, order)
    detail = f"S_K = {btd.seifert_k}, b = {btd.b}, {btd.direction}"
    out = [(f"closed form = general #{i}", twist == general, detail)]
    expect = casson_delta(sd) / 2
    out.append((f"twist casson specialization #{i}", specialize_k0(twist) == expect == 0, detail))
    out.append((f"reverse twist negates #{i}", theta_delta_twist(btd.reversed(), order) == -twist, detail))
    return out


def suite_bandtwist(seed: int = 7, order: int = 8, count: int = 12, threads: int = 1) -> SuiteResult:
    res = SuiteResult("bandtwist")
    t = time.perf_counter()
    args = [(i, btd, order) for i, btd in enumerate(bandtwist_inputs(seed, count))]
    for batch in _map(_twist_instance, args, threads):
        for name, ok, detail in batch:
            res.add(name, ok, detail)
    res.seconds = time.perf_counter() - t
    return res


def suite_rationality(seed: int = 7, low: int = 8, high: int = 12, count: int = 20) -> SuiteResult:
    res = SuiteResult("rationality")
    t = time.perf_counter()
    nontrivial = 0
    for i, sd in enumerate(oracle_inputs(seed, count)):
        kept = sd.block(0, 0)
        if alexander_polynomial(kept).u_span() == (0, 0):
            continue
        nontrivial += 1
        a = reconstruct_numerators(sd, low)
        b = reconstruct_numerators(sd, high)
        res.add(f"numerators order {low} = order {high} #{i}", a == b)
    res.add("has inputs with nontrivial Alexander polynomial", nontrivial > 0, str(nontrivial))
    res.seconds = time.perf_counter() - t
    return res


# ---------------------------------------------------------------------------
# iota


def iota_table(max_n: int = 4) -> list[tuple[int, Fraction, int]]:
    """(n, enumerated blob coefficient, closed-form factor) with blob degree n."""
    return [(n, iota(n, OpenDiagram(struts=n - 1, blob_degree=n)).coeff("blob"), blob_factor(n)) for n in range(1, max_n + 1)]


def suite_iota(seed: int = 7, max_n: int = 4, pairs: int = 20) -> SuiteResult:
    res = SuiteResult("iota")
    t = time.perf_counter()
    for n, got, want in iota_table(max_n):
        res.add(f"blob factor n={n}", got == want, f"{got} vs {want}")
    ex = iota(2, OpenDiagram(struts=1, wheels=(2,)))
    res.add("strut u wheel_2 -> -2 theta", ex.terms == {"theta": -2}, str(ex.terms))
    rng = random.Random(seed)
    grid = [(n, kappa, f) for n in (1, 2, 3) for kappa in (Fraction(0), Fraction(1, 48), Fraction(7, 3)) for f in (-1, 1)]
    for p in range(pairs):
        lam = Fraction(rng.randint(-20, 20), rng.randint(1, 6))
        a2 = Fraction(rng.randint(-20, 20), rng.randint(1, 6))
        ok = all(casson_pipeline(a2, lam, kappa, f, n) == lam + f * a2 for n, kappa, f in grid)
        res.add(f"kappa cancellation #{p}", ok, f"lambda = {lam}, a2 = {a2}")
    res.seconds = time.perf_counter() - t
    return res


def run_suite(name: str, seed: int = 7, order: int | None = None, threads: int = 1) -> list[SuiteResult]:
    """Run one suite, or all of them for ``name == "all"``."""
    if name == "all":
        return [r for s in SUITES for r in run_suite(s, seed, order, threads)]
    if name == "dlp":
        return [suite_dlp(seed, order or 6, threads=threads)]
    if name == "basis":
        return [suite_basis(seed, order or 6, threads=threads)]
    if name == "oracle":
        return [suite_oracle(seed, order or 8, threads=threads)]
    if name == "bandtwist":
        return [suite_bandtwist(seed, order or 8, threads=threads)]
    if name == "iota":
        return [suite_iota(seed)]
    if name == "rationality":
        low = order or 8
        return [suite_rationality(seed, low, low + 4)]
    raise ValueError(f"unknown suite {name!r}")

