import random
from itertools import combinations

import pytest

from sftperturb.charpoly import (
    BorderedMatrix, bordered_det, direct_det, minor_sum_M, perturbed_charpoly,
    perturbed_charpoly_one, perturbed_charpoly_two, permutation_sign, structure_matrix,
)
from sftperturb.correlation import correlation_set
from sftperturb.higher_block import ForbidSet, apply_forbid, build_Tk, invariant_basis
from sftperturb.poly import IntPoly
from sftperturb.sft import ShiftError, enumerate_admissible, full_shift
from sftperturb.spectra import brute_force_charpoly

t = IntPoly.t()


def test_permutation_sign():
    assert permutation_sign([0, 1, 2]) == 1
    assert permutation_sign([1, 0, 2]) == -1
    assert permutation_sign([1, 2, 0]) == 1
    assert permutation_sign([3, 2, 1, 0]) == 1


def test_bordered_scalar_example():
    Mb = BorderedMatrix([[2]], [[3]], [(0, 5)], [(0, 7)])
    assert bordered_det(Mb) == IntPoly.const(-29) == direct_det(Mb)


def test_bordered_rejects_bad_shapes():
    with pytest.raises(ValueError):
        BorderedMatrix([[1, 2]], [[1]], [(0, 1)], [(0, 1)])
    with pytest.raises(ValueError):
        BorderedMatrix([[1]], [[1]], [(1, 1)], [(0, 1)])
    with pytest.raises(ValueError):
        BorderedMatrix([[1]], [[1]], [], [(0, 1)])


def random_bordered(rng, n, m, poly=False):
    def entry():
        if poly:
            return IntPoly([rng.randint(-3, 3) for _ in range(rng.randint(1, 3))])
        return rng.randint(-5, 5)
    A = [[entry() for _ in range(n)] for _ in range(n)]
    B = [[entry() for _ in range(m)] for _ in range(m)]
    cols = [(rng.randrange(n), rng.randint(-3, 3)) for _ in range(m)]
    rows = [(rng.randrange(n), rng.randint(-3, 3)) for _ in range(m)]
    return BorderedMatrix(A, B, cols, rows)


@pytest.mark.parametrize("seed", range(5))
def test_bordered_matches_direct_random(seed):
    rng = random.Random(seed)
    for _ in range(40):
        Mb = random_bordered(rng, rng.randint(1, 4), rng.randint(1, 3), poly=rng.random() < 0.5)
        assert bordered_det(Mb) == direct_det(Mb)


def test_one_word_structure_matrix(FULL2):
    b = invariant_basis(FULL2, 2, [FULL2.parse_word("aaa")])
    Mb = structure_matrix(FULL2, b, correlation_set(b), None)
    X = bordered_det(Mb)
    assert X in (t ** 3 - t * t - t - 1, -(t ** 3 - t * t - t - 1))
    assert X == direct_det(Mb)


@pytest.mark.parametrize("spec_name,text,X,m", [
    ("FULL2", "aaa", [-1, -1, -1, 1], 1),
    ("GOLDEN", "aaa", [-1, -1, 0, 1], 0),
    ("FULL2", "aaba", [-1, 1, 0, -2, 1], 4),
])
def test_one_word_examples(spec_name, text, X, m, request):
    spec = request.getfixturevalue(spec_name)
    res = perturbed_charpoly_one(spec, len(text) - 1, spec.parse_word(text), verify=True)
    assert res.X == IntPoly(X) and res.m == m
    assert res.identity_holds


def test_two_word_examples(FULL2):
    res = perturbed_charpoly_two(FULL2, 2, [FULL2.parse_word("aaa"), FULL2.parse_word("bbb")], verify=True)
    assert res.X == t ** 4 - t * t - 2 * t - 1 and res.m == 0
    assert res.X == (t * t - t - 1) * (t * t + t + 1)
    assert res.M == 2 * t * t - 1
    C = [FULL2.parse_word("aaba"), FULL2.parse_word("aabb")]
    res = perturbed_charpoly_two(FULL2, 3, C, verify=True)
    assert res.X.degree == 5 and res.m == 3
    bf = brute_force_charpoly(apply_forbid(build_Tk(FULL2, 3), ForbidSet(tuple(C))).dense())
    assert bf == res.X.shift(3)


def test_one_word_M_is_single_minor(FULL2, GOLDEN):
    from sftperturb.sft import minor
    for spec in (FULL2, GOLDEN):
        for w in enumerate_admissible(spec, 4):
            b = invariant_basis(spec, 3, [w])
            M = minor_sum_M(spec, b, correlation_set(b), None)
            m = minor(spec, {b.a_exit}, {b.a0})
            assert M in (m, -m)


def test_rejects_bad_input(FULL2):
    with pytest.raises(ShiftError):
        perturbed_charpoly_one(FULL2, 3, FULL2.parse_word("aaa"))
    with pytest.raises(ShiftError):
        perturbed_charpoly_two(FULL2, 2, [FULL2.parse_word("aaa")] * 2)


@pytest.mark.parametrize("spec", [full_shift(3)], ids=["FULL3"])
def test_oracle_three_symbols(spec):
    for k in (1, 2, 3):
        Tk = build_Tk(spec, k)
        words = enumerate_admissible(spec, k + 1)
        for w in words:
            res = perturbed_charpoly(spec, k, [w])
            assert brute_force_charpoly(apply_forbid(Tk, ForbidSet((w,))).dense()) == res.X.shift(res.m)
        for pair in list(combinations(words, 2))[:150]:
            res = perturbed_charpoly(spec, k, list(pair))
            assert res.identity_holds
            assert brute_force_charpoly(apply_forbid(Tk, ForbidSet(pair)).dense()) == res.X.shift(res.m)
