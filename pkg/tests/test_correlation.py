import pytest
from hypothesis import given, strategies as st

from sftperturb.correlation import (
    block_decomposition, correlation_poly, correlation_set, delta_poly, f_polys,
    fundamental_period, is_simple, overlap_coeffs,
)
from sftperturb.higher_block import invariant_basis
from sftperturb.poly import IntPoly

t = IntPoly.t()


def w(s):
    return tuple(ord(c) - ord("a") for c in s)


def test_overlap_examples():
    assert overlap_coeffs(w("aaa"), w("aaa"), 1) == (1, 1)
    assert overlap_coeffs(w("aaba"), w("aaba"), 2) == (1, 0, 0)
    assert overlap_coeffs(w("aabb"), w("aaba"), 2) == (0, 0, 0)
    with pytest.raises(ValueError):
        overlap_coeffs(w("aa"), w("aaa"), 1)
    with pytest.raises(ValueError):
        overlap_coeffs(w("aaa"), w("aaa"), 3)


def test_correlation_poly_examples():
    assert correlation_poly(overlap_coeffs(w("aaa"), w("aaa"), 1)) == t + 1
    assert correlation_poly(overlap_coeffs(w("abab"), w("abab"), 2)) == t * t + 1
    assert correlation_poly(overlap_coeffs(w("aaaa"), w("aaaa"), 2)) == t * t + t + 1


def test_period_examples():
    assert fundamental_period(w("abab"), 2) == 2
    assert fundamental_period(w("aaaa"), 2) == 1
    assert fundamental_period(w("aaba"), 2) == 4


def test_is_simple_examples():
    assert is_simple(w("abcab"))
    assert not is_simple(w("abab"))
    assert not is_simple(w("aa"))
    assert is_simple(w("a"))
    with pytest.raises(ValueError):
        is_simple(())


def test_block_decomposition():
    assert block_decomposition(w("ababa"), 2) == ([w("ab"), w("ab")], w("a"))


words = st.lists(st.integers(0, 2), min_size=2, max_size=10).map(tuple)


@given(words)
def test_self_overlap_leading_one(u):
    d = len(u) - 1
    c = overlap_coeffs(u, u, d)
    assert c[0] == 1 and correlation_poly(c).degree == d


@given(words)
def test_period_matches_periodicity(u):
    d = len(u) - 1
    p = fundamental_period(u, d)
    if p <= d:
        assert all(u[i] == u[i + p] for i in range(len(u) - p))
        blocks, tail = block_decomposition(u, p)
        assert all(b == u[:p] for b in blocks) and tail == u[: len(tail)]
    assert is_simple(u[: min(p, len(u))])


@given(words, words)
def test_cross_overlap_zero_shift(u, v):
    if len(u) != len(v) or u == v:
        return
    assert overlap_coeffs(u, v, len(u) - 1)[0] == 0


def _parts(spec, k, texts):
    b = invariant_basis(spec, k, [spec.parse_word(x) for x in texts])
    corr = correlation_set(b)
    f = f_polys(b, corr) if b.w2 is not None else None
    return b, corr, f


def test_f_polys_examples(FULL2):
    _, corr, f = _parts(FULL2, 2, ["aaa", "bbb"])
    assert not f.f11 and not f.f21
    _, corr, f = _parts(FULL2, 3, ["aaba", "aabb"])
    assert f.f11 == -t and not f.f21
    _, corr, f = _parts(FULL2, 3, ["aaaa", "abaa"])
    assert f.f11 == t + 1 and not f.f21


def test_delta_examples(FULL2):
    _, corr, f = _parts(FULL2, 2, ["aaa"])
    assert delta_poly(corr, f) == t + 1
    _, corr, f = _parts(FULL2, 2, ["aaa", "bbb"])
    assert delta_poly(corr, f) == (t + 1) * (t + 1)
    _, corr, f = _parts(FULL2, 3, ["aaba", "aabb"])
    assert (corr.p11, corr.p22) == (t * t, t)
    assert not corr.p12 and not corr.p21
    assert delta_poly(corr, f) == t ** 3
    with pytest.raises(ValueError):
        delta_poly(corr, None)


def test_delta_degree_and_lead(FULL2, GOLDEN):
    from itertools import combinations
    from sftperturb.sft import enumerate_admissible
    for spec in (FULL2, GOLDEN):
        for k in range(1, 6):
            for pair in combinations(enumerate_admissible(spec, k + 1), 2):
                b = invariant_basis(spec, k, list(pair), verify=False)
                corr = correlation_set(b)
                D = delta_poly(corr, f_polys(b, corr))
                assert D.degree == b.d1 + b.d2 and D.lead == 1
