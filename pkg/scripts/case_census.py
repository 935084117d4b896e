"""Count how often each two-word interaction case occurs, exhaustively per k.

    python scripts/case_census.py --shift data/shifts/golden.txt --kmax 6
"""
import argparse
from collections import Counter
from itertools import combinations

from sftperturb.higher_block import classify_pair, invariant_basis
from sftperturb.sft import enumerate_admissible, load_shift

CASES = ("Disjoint", "CaseA", "CaseB", "CaseC", "Unclassified")


def census(spec, kmax):
    rows = {}
    for k in range(1, kmax + 1):
        counts = Counter()
        violations = 0
        for w1, w2 in combinations(enumerate_admissible(spec, k + 1), 2):
            b = invariant_basis(spec, k, [w1, w2], verify=False)
            counts[b.case_tag] += 1
            if b.case_tag != "Disjoint" and not classify_pair(b).ok:
                violations += 1
        rows[k] = (counts, violations)
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--shift", default="data/shifts/full2.txt")
    ap.add_argument("--kmax", type=int, default=6)
    a = ap.parse_args()
    spec = load_shift(a.shift)
    print("k  " + "  ".join(f"{c:>12}" for c in CASES) + "  violations")
    for k, (counts, bad) in census(spec, a.kmax).items():
        print(f"{k:<2} " + "  ".join(f"{counts.get(c, 0):>12}" for c in CASES) + f"  {bad:>10}")


if __name__ == "__main__":
    main()
