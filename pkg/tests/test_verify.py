from dataclasses import replace


from sftperturb.charpoly import perturbed_charpoly
from sftperturb.poly import IntPoly
from sftperturb.sft import full_shift
from sftperturb.verify import verify_suite


def test_golden_suite_passes(GOLDEN):
    ledger = verify_suite(GOLDEN, 5)
    assert ledger.passed, ledger.format()
    names = set(ledger.results)
    for expected in ("intertwining", "nilpotency", "determination index", "h bounds",
                     "invariant subspace", "case signatures", "oracle equivalence"):
        assert expected in names


def test_full2_suite_passes_small(FULL2):
    ledger = verify_suite(FULL2, 4)
    assert ledger.passed, ledger.format()
    assert ledger.results["oracle equivalence"].instances == sum(2 ** (k + 1) + 2 ** k * (2 ** (k + 1) - 1) for k in range(1, 5))


def test_full3_suite_passes():
    ledger = verify_suite(full_shift(3), 3, pair_k_max=2)
    assert ledger.passed, ledger.format()


def flipped_sign(spec, k, C):
    """Negate the constant term of X, breaking the sign of the product of roots."""
    res = perturbed_charpoly(spec, k, C)
    coeffs = list(res.X.coeffs)
    coeffs[0] = -coeffs[0]
    return replace(res, X=IntPoly(coeffs))


def test_corrupted_X_is_caught(FULL2):
    ledger = verify_suite(FULL2, 3, charpoly_fn=flipped_sign)
    assert not ledger.passed
    failed = {r.name for r in ledger.failed()}
    assert "oracle equivalence" in failed
    assert "X = Delta chi + M" in ledger.results["oracle equivalence"].statement
    assert "intertwining" not in failed


def test_format_lists_failures(FULL2):
    ledger = verify_suite(FULL2, 2, charpoly_fn=flipped_sign)
    text = ledger.format()
    assert "FAIL  oracle equivalence" in text and "k=1" in text
