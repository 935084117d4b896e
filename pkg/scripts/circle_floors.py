"""Lower bounds for |p(t)| and |Delta(t)| on |t| = rho, and the growth of |M(t)|.

For every word (one-word mode) or every pair (two-word mode) the script
samples 64 points on the circle |t| = rho and records

    min |p(t)| / |t|^d1            (one word)
    min |Delta(t)| / |t|^(d1+d2)   (pairs)
    max |M(t)| / (1 + |t|^d1 + |t|^d2) on rho <= |t| <= lambda0   (pairs)

Per-k extremes are printed, with the Delta floor also broken down by d2,
because small-d2 pairs can put a root of Delta right next to the circle.
"""
import argparse
import json
from collections import defaultdict
from dataclasses import asdict, dataclass
from itertools import combinations
from pathlib import Path

from sftperturb.correlation import correlation_set, delta_poly, f_polys
from sftperturb.charpoly import minor_sum_M
from sftperturb.higher_block import invariant_basis
from sftperturb.sft import enumerate_admissible, load_shift, validate_sft
from sftperturb.spectra import annulus_ratio_max, circle_ratio_min, spectral_gap_rho


@dataclass
class FloorConfig:
    shift: str = "data/shifts/full2.txt"
    one_kmax: int = 11
    pair_kmax: int = 8
    samples: int = 64
    out: str = "results/circle_floors.json"


def run(cfg: FloorConfig) -> dict:
    spec = load_shift(cfg.shift)
    lam0 = validate_sft(spec).lambda0
    rho = spectral_gap_rho(spec)
    p_floor = {}
    for k in range(1, cfg.one_kmax + 1):
        vals = []
        for w in enumerate_admissible(spec, k + 1):
            b = invariant_basis(spec, k, [w], verify=False)
            vals.append(circle_ratio_min(correlation_set(b).p11, b.d1, rho, cfg.samples))
        p_floor[k] = min(vals)
        print(f"p     k={k:2d}  floor={p_floor[k]:.6f}")
    delta_floor, m_ceiling = {}, {}
    by_d2 = defaultdict(dict)
    for k in range(1, cfg.pair_kmax + 1):
        lo, hi = float("inf"), 0.0
        for w1, w2 in combinations(enumerate_admissible(spec, k + 1), 2):
            b = invariant_basis(spec, k, [w1, w2], verify=False)
            corr = correlation_set(b)
            f = f_polys(b, corr)
            r = circle_ratio_min(delta_poly(corr, f), b.d1 + b.d2, rho, cfg.samples)
            lo = min(lo, r)
            by_d2[k][b.d2] = min(by_d2[k].get(b.d2, float("inf")), r)
            if k <= 6:
                hi = max(hi, annulus_ratio_max(minor_sum_M(spec, b, corr, f), b.d1, b.d2, rho, lam0))
        delta_floor[k] = lo
        if k <= 6:
            m_ceiling[k] = hi
        cols = "  ".join(f"d2={d}:{v:.4f}" for d, v in sorted(by_d2[k].items()))
        print(f"Delta k={k:2d}  floor={lo:.6f}   {cols}")
    for k, v in m_ceiling.items():
        print(f"M     k={k:2d}  max |M|/(1+|t|^d1+|t|^d2) = {v:.4f}")
    result = {
        "config": asdict(cfg), "rho": rho, "lambda0": lam0,
        "p_floor": p_floor, "delta_floor": delta_floor,
        "delta_floor_by_d2": {k: dict(v) for k, v in by_d2.items()},
        "m_ceiling": m_ceiling,
    }
    Path(cfg.out).parent.mkdir(parents=True, exist_ok=True)
    Path(cfg.out).write_text(json.dumps(result, indent=2, sort_keys=True) + "\n")
    return result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    d = FloorConfig()
    ap.add_argument("--shift", default=d.shift)
    ap.add_argument("--one-kmax", type=int, default=d.one_kmax)
    ap.add_argument("--pair-kmax", type=int, default=d.pair_kmax)
    ap.add_argument("--out", default=d.out)
    a = ap.parse_args()
    run(FloorConfig(a.shift, a.one_kmax, a.pair_kmax, d.samples, a.out))


if __name__ == "__main__":
    main()
