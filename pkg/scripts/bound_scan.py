"""Eigenvalue-difference scans for one and two forbidden words.

Writes one CSV per mode plus a JSON summary with the per-k maxima, the
envelope verdicts and the lambda1 >= rho threshold.

    python scripts/bound_scan.py --shift data/shifts/full2.txt --kmin 4 --kmax 10
"""
import argparse
import json
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from sftperturb.sft import load_shift
from sftperturb.spectra import envelope_ok, max_by, reports_to_csv, scan_bounds, summary_dict


@dataclass
class BoundScanConfig:
    shift: str = "data/shifts/full2.txt"
    kmin: int = 4
    kmax: int = 10
    budget: int = 10_000
    seed: int = 0
    out_dir: str = "results/bound_scan"


def split_windows(kmin, kmax):
    mid = (kmin + kmax + 1) // 2
    return (kmin, mid), (mid, kmax)


def run(cfg: BoundScanConfig) -> dict:
    spec = load_shift(cfg.shift)
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    early, late = split_windows(cfg.kmin, cfg.kmax)
    result = {"config": asdict(cfg), "windows": {"early": early, "late": late}}
    for mode, key in (("one", "scaled_one"), ("two", "scaled_two")):
        t0 = time.time()
        reports, summary = scan_bounds(spec, range(cfg.kmin, cfg.kmax + 1), mode, cfg.budget, cfg.seed)
        (out / f"{mode}_word.csv").write_text(reports_to_csv(reports))
        by_k = max_by(reports, key)
        entry = summary_dict(summary)
        entry["max_by_k"] = {str(k): v for k, v in by_k.items()}
        entry["envelope_ok"] = envelope_ok(by_k, early, late)
        if mode == "one":
            by_d = max_by(reports, key, group="d1")
            entry["max_by_d"] = {str(d): v for d, v in by_d.items()}
            if any(d <= 5 for d in by_d) and any(d >= 5 for d in by_d):
                entry["envelope_ok_by_d"] = envelope_ok(by_d, (2, 5), (5, 10))
        entry["seconds"] = round(time.time() - t0, 1)
        result[mode] = entry
        print(f"[{mode}] rows={len(reports)} envelope_ok={entry['envelope_ok']} "
              f"rho_threshold={summary.rho_threshold} ({entry['seconds']}s)")
        for k, v in sorted(by_k.items()):
            print(f"    k={k:2d}  max {key} = {v:.6f}")
    (out / "summary.json").write_text(json.dumps(result, indent=2, sort_keys=True) + "\n")
    return result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    d = BoundScanConfig()
    ap.add_argument("--shift", default=d.shift)
    ap.add_argument("--kmin", type=int, default=d.kmin)
    ap.add_argument("--kmax", type=int, default=d.kmax)
    ap.add_argument("--budget", type=int, default=d.budget)
    ap.add_argument("--seed", type=int, default=d.seed)
    ap.add_argument("--out-dir", default=d.out_dir)
    a = ap.parse_args()
    run(BoundScanConfig(a.shift, a.kmin, a.kmax, a.budget, a.seed, a.out_dir))


if __name__ == "__main__":
    main()
