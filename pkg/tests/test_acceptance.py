"""Acceptance criteria 1-12, exact tolerances. Each test prints one PASS/FAIL line."""
import json
import subprocess
import sys
import time
from pathlib import Path

import pytest

from lmotheta import verify
from lmotheta.verify import Check

DATA = Path(__file__).parent / "data"
SEED = 7


@pytest.fixture(scope="module")
def dlp():
    return verify.suite_dlp(SEED, order=6, count=50)


@pytest.fixture(scope="module")
def basis():
    return verify.suite_basis(SEED, order=6, count=20, bridge_order=8)


@pytest.fixture(scope="module")
def oracle():
    return verify.suite_oracle(SEED, order=8, count=20)


@pytest.fixture(scope="module")
def bandtwist():
    return verify.suite_bandtwist(SEED, order=8, count=12)


@pytest.fixture(scope="module")
def iota_suite():
    return verify.suite_iota(SEED, max_n=4, pairs=20)


@pytest.fixture(scope="module")
def rationality():
    return verify.suite_rationality(SEED, low=8, high=12, count=20)


def select(res, prefix):
    return [c for c in res.checks if c.name.startswith(prefix)]


def report(capsys, number, title, checks, extra=""):
    failed = [c for c in checks if not c.passed]
    ok = bool(checks) and not failed
    with capsys.disabled():
        status = "PASS" if ok else "FAIL"
        print(f"\n[criterion {number:>2}] {status} {title}: {len(checks) - len(failed)}/{len(checks)} {extra}".rstrip())
    assert checks, "no checks ran"
    assert not failed, "; ".join(f"{c.name} {c.detail}" for c in failed)


def test_criterion_01_dlp(capsys, dlp):
    assert len(select(dlp, "multiplicativity")) == 50
    checks = dlp.checks + [Check("under 60 s", dlp.seconds < 60, f"{dlp.seconds:.1f}s")]
    report(capsys, 1, "determinant-like properties", checks, f"({dlp.seconds:.1f}s)")


def test_criterion_02_basis_invariance(capsys, basis):
    checks = select(basis, "basis invariance")
    assert len(checks) == 20
    report(capsys, 2, "basis invariance", checks)


def test_criterion_03_abelian_bridge(capsys, basis):
    checks = select(basis, "abelian bridge")
    assert len(checks) == 11
    report(capsys, 3, "abelian bridge", checks)


def test_criterion_04_oracle_equivalence(capsys, oracle):
    checks = select(oracle, "fast = oracle")
    assert len(checks) == 20
    checks.append(Check("under 5 min", oracle.seconds < 300, f"{oracle.seconds:.1f}s"))
    report(capsys, 4, "fast path = oracle", checks, f"({oracle.seconds:.1f}s)")


def test_criterion_05_band_twist_closed_form(capsys, bandtwist):
    checks = select(bandtwist, "closed form = general")
    assert len(checks) == 12
    report(capsys, 5, "band twist closed form (raw representation)", checks)


def test_criterion_06_casson_specialization(capsys, oracle, bandtwist):
    checks = select(oracle, "casson specialization") + select(bandtwist, "twist casson specialization")
    assert len(checks) == 32
    report(capsys, 6, "Casson specialization", checks)


def test_criterion_07_split_trefoil(capsys, oracle):
    checks = select(oracle, "split trefoil")
    assert len(checks) == 2
    report(capsys, 7, "split trefoil", checks)


def test_criterion_08_iota(capsys, iota_suite):
    checks = select(iota_suite, "blob factor") + select(iota_suite, "strut u wheel_2")
    assert len(checks) == 5
    checks.append(Check("under 10 s", iota_suite.seconds < 10, f"{iota_suite.seconds:.2f}s"))
    report(capsys, 8, "iota blob factors and -2 theta", checks, f"({iota_suite.seconds:.2f}s)")


def test_criterion_09_kappa_cancellation(capsys, iota_suite):
    checks = select(iota_suite, "kappa cancellation")
    assert len(checks) == 20
    report(capsys, 9, "kappa cancellation", checks)


def test_criterion_10_rationality(capsys, rationality):
    checks = rationality.checks
    assert len(select(rationality, "numerators")) > 0
    report(capsys, 10, "rationality N=8 vs N=12", checks)


def test_criterion_11_kprime_cap(capsys, oracle):
    checks = select(oracle, "k' cap 2 = cap 4")
    assert len(checks) == 20
    report(capsys, 11, "k' cap 2 = cap 4", checks)


def test_criterion_12_performance(capsys):
    path = DATA / "random_8x8.json"
    assert len(json.loads(path.read_text())["seifert"]) == 8
    start = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "lmotheta", "theta-delta", str(path), "--order", "10"],
        capture_output=True,
        text=True,
        check=False,
    )
    elapsed = time.perf_counter() - start
    out = json.loads(proc.stdout) if proc.returncode == 0 else {}
    checks = [
        Check("exit code 0", proc.returncode == 0, proc.stderr),
        Check("pipelines agree", out.get("pipelines_agree") is True),
        Check("under 60 s", elapsed < 60, f"{elapsed:.1f}s"),
    ]
    report(capsys, 12, "8x8 theta-delta at N=10", checks, f"({elapsed:.1f}s)")
