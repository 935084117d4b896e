import math

import pytest
from hypothesis import given, settings, strategies as st

from sftperturb.higher_block import ForbidSet, apply_forbid, build_Tk
from sftperturb.poly import IntPoly, poly_det
from sftperturb.spectra import (
    ScanConfig, brute_force_charpoly, circle_ratio_min, envelope_ok, max_by,
    pf_eigenvalue, reports_to_csv, rho_threshold, sample_instances, scan_bounds,
    spectral_gap_rho,
)
from sftperturb.sft import char_poly_T

t = IntPoly.t()


def test_pf_examples(FULL2, GOLDEN):
    assert abs(pf_eigenvalue(char_poly_T(GOLDEN)).value - (1 + math.sqrt(5)) / 2) < 1e-12
    assert pf_eigenvalue(char_poly_T(FULL2)).value == 2.0
    assert abs(pf_eigenvalue(t ** 3 - t * t - t - 1).value - 1.839286755214) < 1e-11


def test_rho_examples(FULL2, GOLDEN, CYCLE3):
    assert abs(spectral_gap_rho(FULL2) - math.sqrt(2)) < 1e-12
    assert abs(spectral_gap_rho(GOLDEN) - math.sqrt((1 + math.sqrt(5)) / 2)) < 1e-12
    with pytest.raises(ValueError):
        spectral_gap_rho(CYCLE3)


def test_brute_force_examples(FULL2):
    T2 = build_Tk(FULL2, 2)
    aaa, bbb = FULL2.parse_word("aaa"), FULL2.parse_word("bbb")
    assert brute_force_charpoly(apply_forbid(T2, ForbidSet((aaa,))).dense()) == t ** 4 - t ** 3 - t * t - t
    assert brute_force_charpoly(apply_forbid(T2, ForbidSet((aaa, bbb))).dense()) == t ** 4 - t * t - 2 * t - 1
    eye = [[int(i == j) for j in range(3)] for i in range(3)]
    assert brute_force_charpoly(eye) == (t - 1) ** 3
    with pytest.raises(ValueError):
        brute_force_charpoly(eye, cap=2)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_backends_agree(M):
    n = len(M)
    direct = poly_det([[(IntPoly([M[i][j], -1]) if i == j else IntPoly.const(M[i][j]))
                        for j in range(n)] for i in range(n)]) * (-1) ** n
    assert brute_force_charpoly(M, backend="flint") == brute_force_charpoly(M, backend="bareiss") == direct


def test_circle_ratio_and_envelope():
    assert abs(circle_ratio_min(t + 1, 1, 2.0) - 0.5) < 1e-12
    assert circle_ratio_min(IntPoly(), 1, 2.0) == 0.0
    assert envelope_ok({1: 1.0, 2: 1.5, 3: 1.9}, (1, 2), (2, 3))
    assert not envelope_ok({1: 1.0, 2: 1.0, 3: 2.5}, (1, 2), (3, 3))
    assert envelope_ok({1: 1.0, 2: 0.6}, (1, 1), (2, 2), mode="min")
    assert not envelope_ok({1: 1.0, 2: 0.4}, (1, 1), (2, 2), mode="min")
    with pytest.raises(ValueError):
        envelope_ok({1: 1.0}, (2, 3), (1, 1))


def test_scan_examples(FULL2):
    reports, _ = scan_bounds(FULL2, [2], "one")
    row = next(r for r in reports if r.words == ("aaa",))
    assert abs(row.lambda1 - 1.8392868) < 1e-7
    assert abs(row.diff - 0.1607132) < 1e-7
    assert abs(row.scaled_one - 0.3214265) < 1e-7
    reports, _ = scan_bounds(FULL2, [2], "two")
    row = next(r for r in reports if r.words == ("aaa", "bbb"))
    assert abs(row.lambda1 - 1.6180340) < 1e-7
    assert abs(row.scaled_two - 0.7639320) < 1e-7
    assert scan_bounds(FULL2, [], "one")[0] == []


def test_sampling_is_seeded_and_distinct(FULL2):
    a, ex = sample_instances(FULL2, 5, "two", 300, seed=7)
    b, _ = sample_instances(FULL2, 5, "two", 300, seed=7)
    c, _ = sample_instances(FULL2, 5, "two", 300, seed=8)
    assert not ex and a == b and a != c
    assert len(set(a)) == 300 and all(u != v for u, v in a)
    full, ex = sample_instances(FULL2, 2, "two", 10_000, seed=0)
    assert ex and len(full) == 28


def test_csv_is_deterministic(GOLDEN):
    r1, _ = scan_bounds(GOLDEN, range(2, 5), "two", 40, 3)
    r2, _ = scan_bounds(GOLDEN, range(2, 5), "two", 40, 3)
    assert reports_to_csv(r1) == reports_to_csv(r2)
    assert reports_to_csv(r1).splitlines()[0].startswith("k,w1,w2")


def test_rho_threshold_and_max_by(FULL2):
    reports, summary = scan_bounds(FULL2, range(1, 6), "one")
    thr = rho_threshold(reports, math.sqrt(2))
    assert summary.rho_threshold == thr
    assert all(r.lambda1 >= math.sqrt(2) for r in reports if r.k >= thr)
    assert set(max_by(reports, "scaled_one")) == set(range(1, 6))


def test_scan_config_validation():
    with pytest.raises(ValueError):
        ScanConfig(mode="three")
    with pytest.raises(ValueError):
        ScanConfig(budget=0)
    assert list(ScanConfig(3, 5).k_range) == [3, 4, 5]
