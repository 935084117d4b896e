"""End-to-end acceptance checks; each test prints one PASS/FAIL line.

Run alone with ``python tests/test_acceptance.py`` or ``pytest tests/test_acceptance.py -s``.
"""
import math
import random
import subprocess
import sys
import time
from collections import defaultdict

import pytest

from conftest import ACCEPTANCE_LINES
from sftperturb.charpoly import BorderedMatrix, bordered_det, direct_det, perturbed_charpoly
from sftperturb.poly import IntPoly
from sftperturb.sft import full_shift, golden_mean_shift
from sftperturb.spectra import (
    delta_ratio_scan, envelope_ok, max_by, min_by_k, pf_eigenvalue, scan_bounds,
)
from sftperturb.verify import verify_suite

t = IntPoly.t()
FULL2 = full_shift(2)
GOLDEN = golden_mean_shift()


def report(n: int, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def timed(fn, *args, **kw):
    start = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - start


def single_instance(spec, words):
    C = [spec.parse_word(w) for w in words]
    res = perturbed_charpoly(spec, len(C[0]) - 1, C, verify=True)
    return res, pf_eigenvalue(res.X)


def test_criterion_1_full2_aaa():
    (res, lam), sec = timed(single_instance, FULL2, ["aaa"])
    ok = res.X == t ** 3 - t * t - t - 1 and abs(lam.value - 1.839287) <= 1e-6 and sec < 1
    report(1, ok, f"lambda1={lam.value:.9f} X={res.X} ({sec:.3f}s)")
    assert ok


def test_criterion_2_full2_aaa_bbb():
    (res, lam), sec = timed(single_instance, FULL2, ["aaa", "bbb"])
    factors = res.X.divexact(t * t - t - 1) == t * t + t + 1
    ok = res.X == t ** 4 - t * t - 2 * t - 1 and factors and abs(lam.value - 1.618034) <= 1e-6 and sec < 1
    report(2, ok, f"X={res.X} lambda1={lam.value:.9f} ({sec:.3f}s)")
    assert ok


def test_criterion_3_golden_aaa():
    (res, lam), sec = timed(single_instance, GOLDEN, ["aaa"])
    ok = res.X == t ** 3 - t - 1 and abs(lam.value - 1.324718) <= 1e-6 and sec < 1
    report(3, ok, f"X={res.X} lambda1={lam.value:.9f} ({sec:.3f}s)")
    assert ok


@pytest.fixture(scope="module")
def ledgers():
    """One exhaustive run per shift: single words to k = 8, pairs to k = 6."""
    out = {}
    for name, spec in (("FULL2", FULL2), ("GOLDEN", GOLDEN)):
        out[name] = timed(verify_suite, spec, 8, pair_k_max=6)
    return out


def test_criterion_4_oracle_equivalence(ledgers):
    total_sec = sum(sec for _, sec in ledgers.values())
    parts, ok = [], total_sec < 600
    for name, (ledger, _) in ledgers.items():
        r = ledger.results["oracle equivalence"]
        parts.append(f"{name} {r.instances} instances {r.failure_count} failures")
        ok = ok and r.passed and r.instances > 0
    report(4, ok, "; ".join(parts) + f" ({total_sec:.1f}s)")
    assert ok


def test_criterion_5_bordered_determinants():
    rng = random.Random(20240601)

    def entry():
        return IntPoly([rng.randint(-4, 4) for _ in range(rng.randint(1, 3))])

    def run():
        bad = 0
        for _ in range(200):
            n, m = rng.randint(1, 4), rng.randint(1, 3)
            Mb = BorderedMatrix(
                [[entry() for _ in range(n)] for _ in range(n)],
                [[entry() for _ in range(m)] for _ in range(m)],
                [(rng.randrange(n), rng.randint(-3, 3)) for _ in range(m)],
                [(rng.randrange(n), rng.randint(-3, 3)) for _ in range(m)],
            )
            bad += bordered_det(Mb) != direct_det(Mb)
        return bad

    bad, sec = timed(run)
    ok = bad == 0 and sec < 10
    report(5, ok, f"200 random bordered matrices, {bad} mismatches ({sec:.2f}s)")
    assert ok


STRUCTURAL = ("intertwining", "nilpotency", "determination index", "h bounds",
              "invariant subspace", "case signatures", "period divisibility", "block copies")


def test_criterion_6_structural_suite(ledgers):
    parts, ok = [], True
    for name, (ledger, _) in ledgers.items():
        checks = [r for r in ledger.results.values() if r.name != "oracle equivalence"]
        missing = [c for c in STRUCTURAL if c not in ledger.results]
        case_checks = [r for r in checks if r.name.startswith("Case")]
        failures = sum(r.failure_count for r in checks)
        parts.append(f"{name} {len(checks)} checks ({len(case_checks)} case-level) {failures} violations")
        ok = ok and not missing and failures == 0 and case_checks
        for r in ledger.failed():
            if r.name != "oracle equivalence":
                print(f"    {name} {r.name}: {r.failures[:3]}")
    report(6, bool(ok), "; ".join(parts))
    assert ok


def test_criterion_7_bound_envelopes():
    ks = range(4, 11)
    one, sone = scan_bounds(FULL2, ks, "one", 10_000, 0)
    two, stwo = scan_bounds(FULL2, ks, "two", 10_000, 0)
    m1 = max_by(one, "scaled_one")
    m2 = max_by(two, "scaled_two")
    env1 = envelope_ok(m1, (4, 7), (7, 10))
    env2 = envelope_ok(m2, (4, 7), (7, 10))
    thr = [s.rho_threshold for s in (sone, stwo)]
    ok = env1 and env2 and all(x is not None and x <= 10 for x in thr)
    print("    max |l1-l0| l0^d1 by k:", {k: round(v, 4) for k, v in m1.items()})
    print("    max |l1-l0| l0^(k/2) by k:", {k: round(v, 4) for k, v in m2.items()})
    report(7, ok, f"one-word envelope {env1}, two-word envelope {env2}, "
                  f"lambda1>=rho=sqrt(2) from k={thr[0]} (one) k={thr[1]} (two)")
    assert ok


def test_criterion_8_delta_lower_bound():
    rows, sec = timed(delta_ratio_scan, FULL2, range(1, 9), math.sqrt(2), 64)
    per_k = min_by_k(rows)
    positive = all(r.ratio > 0 for r in rows)
    env = envelope_ok(per_k, (1, 5), (5, 8), mode="min")
    ok = positive and env and sec < 300
    worst = min(rows, key=lambda r: r.ratio)
    by_d2 = defaultdict(lambda: math.inf)
    for r in rows:
        if r.d2 >= 3:
            by_d2[r.k] = min(by_d2[r.k], r.ratio)
    print("    per-k min:", {k: round(v, 5) for k, v in per_k.items()})
    print("    per-k min over pairs with d2 >= 3:", {k: round(v, 5) for k, v in by_d2.items() if v < math.inf})
    print(f"    smallest ratio {worst.ratio:.5f} at k={worst.k} C={[FULL2.format_word(w) for w in worst.words]}")
    report(8, ok, f"positive {positive}, min-envelope {env}, {len(rows)} pairs ({sec:.1f}s)")
    assert ok


def test_criterion_9_scan_determinism(tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"run{i}.csv"
        subprocess.run(
            [sys.executable, "-m", "sftperturb.cli", "scan", "data/shifts/full2.txt",
             "--mode", "two", "--kmin", "3", "--kmax", "6", "--budget", "500", "--seed", "11",
             "--out", str(path)],
            check=True, capture_output=True,
            cwd=__file__.rsplit("/tests/", 1)[0],
        )
        outs.append(path.read_bytes())
    ok = outs[0] == outs[1] and len(outs[0]) > 0
    report(9, ok, f"two scan runs, {len(outs[0])} bytes each, identical {outs[0] == outs[1]}")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
