"""Command-line entry point: ``sftperturb <subcommand> <shift-file> ...``.

Exit codes: 0 success, 1 bad input, 2 a verification check failed.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .poly import format_poly
from .sft import ShiftError, char_poly_T, load_shift, validate_sft

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2


def _words(spec, raw: list[str]):
    return [spec.check_word(spec.parse_word(w)) for w in raw]


def cmd_validate(args) -> int:
    spec = load_shift(args.shift)
    d = validate_sft(spec)
    print(f"symbols: {' '.join(spec.symbols)}")
    print(f"irreducible: {str(d.irreducible).lower()}")
    print(f"period: {d.period_s}")
    print(f"cycle: {str(d.is_cycle).lower()}")
    print(f"lambda0: {d.lambda0:.12f}")
    return EXIT_OK


def cmd_entropy(args) -> int:
    from .spectra import spectral_gap_rho

    spec = load_shift(args.shift)
    d = validate_sft(spec)
    print(f"chi_T: {format_poly(char_poly_T(spec))}")
    print(f"lambda0: {d.lambda0:.12f} +- {d.lambda0_radius:.1e}")
    print(f"entropy: {math.log(d.lambda0) if d.lambda0 > 0 else float('-inf'):.12f}")
    try:
        print(f"rho: {spectral_gap_rho(spec):.12f}")
    except ValueError as exc:
        print(f"rho: undefined ({exc})")
    return EXIT_OK


def cmd_forbid(args) -> int:
    from .charpoly import perturbed_charpoly
    from .spectra import pf_eigenvalue

    spec = load_shift(args.shift)
    validate_sft(spec)
    words = _words(spec, args.word)
    k = args.k if args.k is not None else len(words[0]) - 1
    res = perturbed_charpoly(spec, k, words, verify=True)
    lam = pf_eigenvalue(res.X)
    print(res.basis.describe())
    print(f"X: {format_poly(res.X)}")
    print(f"Delta: {format_poly(res.Delta)}")
    print(f"M: {format_poly(res.M)}")
    print(f"m: {res.m}")
    print(f"lambda1: {lam.value:.12f} +- {lam.radius:.1e}")
    return EXIT_OK


def cmd_classify(args) -> int:
    from .higher_block import classify_pair, invariant_basis

    spec = load_shift(args.shift)
    validate_sft(spec)
    words = _words(spec, args.word)
    if len(words) != 2:
        raise ShiftError("classify needs exactly two words")
    b = invariant_basis(spec, len(words[0]) - 1, words, verify=True)
    print(b.describe())
    rec = classify_pair(b)
    print(rec.describe())
    return EXIT_OK if rec.ok else EXIT_VERIFY


def cmd_scan(args) -> int:
    from .spectra import reports_to_csv, scan_bounds, summary_dict

    spec = load_shift(args.shift)
    reports, summary = scan_bounds(spec, range(args.kmin, args.kmax + 1), args.mode, args.budget, args.seed)
    text = reports_to_csv(reports)
    meta = json.dumps(summary_dict(summary), indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text)
        Path(args.out + ".meta.json").write_text(meta)
        print(f"wrote {len(reports)} rows to {args.out}")
    else:
        sys.stdout.write(text)
    for k, row in summary.per_k.items():
        key = "max_scaled_one" if args.mode == "one" else "max_scaled_two"
        print(f"k={k} n={row['count']} {key}={row[key]:.6g} cases={row['cases']}", file=sys.stderr)
    print(f"rho={summary.rho} lambda1>=rho from k={summary.rho_threshold}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import verify_suite

    spec = load_shift(args.shift)
    ledger = verify_suite(spec, args.kmax, pair_k_max=args.pair_kmax)
    print(ledger.format())
    return EXIT_OK if ledger.passed else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sftperturb", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("validate", help="check a shift file and describe its graph")
    p.add_argument("shift")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("entropy", help="characteristic polynomial, lambda0 and rho")
    p.add_argument("shift")
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("forbid", help="X(t), Delta(t), M(t) and lambda1 after forbidding words")
    p.add_argument("shift")
    p.add_argument("-k", type=int, default=None, help="block length (default: word length - 1)")
    p.add_argument("-w", "--word", action="append", required=True, help="forbidden word (repeat for a pair)")
    p.set_defaults(func=cmd_forbid)

    p = sub.add_parser("classify", help="interaction case of two forbidden words")
    p.add_argument("shift")
    p.add_argument("-w", "--word", action="append", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("scan", help="eigenvalue-difference scan written as CSV")
    p.add_argument("shift")
    p.add_argument("--mode", choices=("one", "two"), default="one")
    p.add_argument("--kmin", type=int, default=2)
    p.add_argument("--kmax", type=int, default=6)
    p.add_argument("--budget", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="CSV path; a .meta.json summary is written next to it")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", help="exhaustive structural checks")
    p.add_argument("shift")
    p.add_argument("--kmax", type=int, default=4)
    p.add_argument("--pair-kmax", type=int, default=None)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ShiftError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
