"""Perron-Frobenius eigenvalues, the gap radius rho, the brute-force oracle and
the bound-validation scans."""
from __future__ import annotations

import csv
import io
import math
import random
from collections import Counter
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .poly import IntPoly, NoRealRootError, RootEstimate, largest_real_root, poly_det

try:  # exact charpoly of large integer matrices; optional
    import flint
except ImportError:  # pragma: no cover - exercised only without python-flint
    flint = None


def pf_eigenvalue(X: IntPoly, tol: float = 1e-12) -> RootEstimate:
    """Largest real root >= 0; 0 when there is none (nilpotent matrix)."""
    try:
        return largest_real_root(X, lower_bound=0, tol=tol)
    except NoRealRootError:
        zero = Fraction(0)
        return RootEstimate(0.0, 0.0, zero, zero)


def spectral_gap_rho(spec) -> float:
    """Geometric mean of max(1, |second eigenvalue|) and lambda0."""
    from .sft import char_poly_T, validate_sft

    desc = validate_sft(spec)
    if not desc.irreducible:
        raise ValueError("the gap radius needs an irreducible shift")
    lam0 = desc.lambda0
    if lam0 <= 1 + 1e-12:
        raise ValueError(f"lambda0 = {lam0:.6g} <= 1: the shift has zero entropy, so no rho with 1 < rho < lambda0 exists")
    chi = char_poly_T(spec)
    roots = np.roots([float(c) for c in reversed(chi.coeffs)])
    mods = [abs(z) for z in roots if abs(abs(z) - lam0) > 1e-9 * lam0]
    second = max(mods, default=0.0)
    return math.sqrt(max(1.0, second) * lam0)


# ---------------------------------------------------------------------------
# brute-force oracle

def brute_force_charpoly(matrix: Sequence[Sequence[int]], cap: int = 512, backend: str = "auto") -> IntPoly:
    """Monic characteristic polynomial det(t - M) of a square integer matrix.

    ``backend`` is ``"flint"`` (FLINT's integer charpoly), ``"bareiss"``
    (fraction-free elimination on M - t over Z[t]) or ``"auto"``.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix is not square")
    if n > cap:
        raise ValueError(f"dimension {n} exceeds the oracle cap {cap}")
    if backend == "auto":
        backend = "flint" if flint is not None and n > 12 else "bareiss"
    if backend == "flint":
        if flint is None:
            raise RuntimeError("python-flint is not installed")
        if n == 0:
            return IntPoly.const(1)
        return IntPoly(int(c) for c in flint.fmpz_mat([list(r) for r in matrix]).charpoly().coeffs())
    if backend != "bareiss":
        raise ValueError(f"unknown backend {backend!r}")
    t = IntPoly.t()
    rows = [[IntPoly.const(matrix[i][j]) - (t if i == j else 0) for j in range(n)] for i in range(n)]
    return poly_det(rows).normalized()


# ---------------------------------------------------------------------------
# circle sampling

def circle_ratio_min(p: IntPoly, d: int, rho: float, samples: int = 64) -> float:
    """min over |t| = rho (``samples`` equally spaced angles) of |p(t)| / |t|^d."""
    if not p:
        return 0.0
    z = rho * np.exp(2j * np.pi * np.arange(samples) / samples)
    vals = np.polyval([float(c) for c in reversed(p.coeffs)], z)
    return float(np.min(np.abs(vals))) / rho ** d


def envelope_ok(values: dict[int, float], early: tuple[int, int], late: tuple[int, int], factor: float = 2.0, mode: str = "max") -> bool:
    """Non-divergence rule on a per-k statistic.

    ``mode="max"``: max over the late window is at most ``factor`` times the
    max over the early window (used for quantities that must stay bounded).
    ``mode="min"``: min over the late window is at least the early min divided
    by ``factor`` (used for lower bounds that must not decay).
    """
    ev = [v for k, v in values.items() if early[0] <= k <= early[1]]
    lv = [v for k, v in values.items() if late[0] <= k <= late[1]]
    if not ev or not lv:
        raise ValueError("envelope windows contain no data")
    if mode == "max":
        return max(lv) <= factor * max(ev)
    if mode == "min":
        return min(lv) * factor >= min(ev)
    raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# scans

@dataclass
class SpectralReport:
    k: int
    words: tuple[str, ...]
    case_tag: str
    d1: int
    d2: int | None
    delta: int
    lambda0: float
    lambda1: float
    lambda1_radius: float
    rho: float | None
    diff: float = 0.0
    scaled_one: float = 0.0
    scaled_two: float = 0.0

    def __post_init__(self):
        self.diff = abs(self.lambda1 - self.lambda0)
        self.scaled_one = self.diff * self.lambda0 ** self.d1
        self.scaled_two = self.diff * self.lambda0 ** (self.k / 2)


@dataclass
class ScanConfig:
    k_min: int = 2
    k_max: int = 6
    mode: str = "one"          # "one" or "two"
    budget: int = 10_000
    seed: int = 0

    def __post_init__(self):
        if self.mode not in ("one", "two"):
            raise ValueError("mode must be 'one' or 'two'")
        if self.budget < 1:
            raise ValueError("budget must be at least 1")

    @property
    def k_range(self) -> range:
        return range(self.k_min, self.k_max + 1)


@dataclass
class ScanSummary:
    config: ScanConfig
    per_k: dict[int, dict] = field(default_factory=dict)
    rho: float | None = None
    rho_threshold: int | None = None
    exhaustive: dict[int, bool] = field(default_factory=dict)


def _rng(seed: int, k: int) -> random.Random:
    return random.Random(f"{seed}:{k}")


def sample_instances(spec, k: int, mode: str, budget: int, seed: int) -> tuple[list[tuple], bool]:
    """Forbidden sets at length k+1: exhaustive when they fit the budget, else a seeded sample."""
    from .sft import enumerate_admissible

    words = enumerate_admissible(spec, k + 1)
    if mode == "one":
        if len(words) <= budget:
            return [(w,) for w in words], True
        idx = sorted(_rng(seed, k).sample(range(len(words)), budget))
        return [(words[i],) for i in idx], False
    n = len(words)
    total = n * (n - 1) // 2
    if total <= budget:
        return list(combinations(words, 2)), True
    rng = _rng(seed, k)
    chosen: set[tuple[int, int]] = set()
    while len(chosen) < budget:
        i, j = rng.randrange(n), rng.randrange(n)
        if i != j:
            chosen.add((min(i, j), max(i, j)))
    return [(words[i], words[j]) for i, j in sorted(chosen)], False


def report_for(spec, k: int, C: Sequence[Sequence[int]], lambda0: float, rho: float | None) -> SpectralReport:
    from .charpoly import perturbed_charpoly

    res = perturbed_charpoly(spec, k, C)
    b = res.basis
    lam1 = pf_eigenvalue(res.X)
    return SpectralReport(
        k=k, words=tuple(spec.format_word(w) for w in b.words), case_tag=b.case_tag,
        d1=b.d1, d2=b.d2, delta=b.delta, lambda0=lambda0,
        lambda1=lam1.value, lambda1_radius=lam1.radius, rho=rho,
    )


def rho_threshold(reports: Iterable[SpectralReport], rho: float) -> int | None:
    """Smallest k such that every instance at k' >= k has lambda1 >= rho."""
    ks = sorted({r.k for r in reports})
    bad = {r.k for r in reports if r.lambda1 < rho}
    threshold = None
    for k in reversed(ks):
        if k in bad:
            break
        threshold = k
    return threshold


def scan_bounds(spec, k_range: Iterable[int], mode: str = "one", sample_budget: int = 10_000, seed: int = 0):
    """Reports for every sampled instance plus a per-k summary."""
    from .sft import validate_sft

    ks = list(k_range)
    config = ScanConfig(min(ks, default=0), max(ks, default=-1), mode, sample_budget, seed) if ks else None
    desc = validate_sft(spec)
    lam0 = desc.lambda0
    try:
        rho = spectral_gap_rho(spec)
    except ValueError:
        rho = None
    reports: list[SpectralReport] = []
    summary = ScanSummary(config or ScanConfig(mode=mode, budget=sample_budget, seed=seed), rho=rho)
    for k in ks:
        instances, exhaustive = sample_instances(spec, k, mode, sample_budget, seed)
        summary.exhaustive[k] = exhaustive
        rows = [report_for(spec, k, C, lam0, rho) for C in instances]
        rows.sort(key=lambda r: r.words)
        reports.extend(rows)
        if rows:
            summary.per_k[k] = {
                "count": len(rows),
                "max_scaled_one": max(r.scaled_one for r in rows),
                "max_scaled_two": max(r.scaled_two for r in rows),
                "min_lambda1": min(r.lambda1 for r in rows),
                "cases": dict(sorted(Counter(r.case_tag for r in rows).items())),
            }
    if rho is not None and reports:
        summary.rho_threshold = rho_threshold(reports, rho)
    return reports, summary


def max_by(reports: Iterable[SpectralReport], key: str, group: str = "k") -> dict[int, float]:
    out: dict[int, float] = {}
    for r in reports:
        g = getattr(r, group)
        out[g] = max(out.get(g, 0.0), getattr(r, key))
    return out


CSV_COLUMNS = ("k", "w1", "w2", "case", "d1", "d2", "delta", "lambda0", "lambda1", "diff", "scaled_one", "scaled_two")


def reports_to_csv(reports: Iterable[SpectralReport]) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(CSV_COLUMNS)
    for r in reports:
        wr.writerow([
            r.k, r.words[0], r.words[1] if len(r.words) > 1 else "", r.case_tag, r.d1,
            "" if r.d2 is None else r.d2, r.delta,
            f"{r.lambda0:.12f}", f"{r.lambda1:.12f}", f"{r.diff:.12e}",
            f"{r.scaled_one:.12e}", f"{r.scaled_two:.12e}",
        ])
    return buf.getvalue()


def summary_dict(summary: ScanSummary) -> dict:
    return {
        "config": asdict(summary.config),
        "rho": summary.rho,
        "rho_threshold": summary.rho_threshold,
        "exhaustive": {str(k): v for k, v in summary.exhaustive.items()},
        "per_k": {str(k): v for k, v in summary.per_k.items()},
    }


# ---------------------------------------------------------------------------
# lower-bound sampling for p(t) and Delta(t)

@dataclass
class RatioRow:
    k: int
    words: tuple
    d: int
    ratio: float
    d2: int | None = None


def p_ratio_scan(spec, k_range: Iterable[int], rho: float, samples: int = 64) -> list[RatioRow]:
    """|p(t)| / |t|^d1 on |t| = rho for every forbidden word."""
    from .correlation import correlation_set
    from .higher_block import invariant_basis
    from .sft import enumerate_admissible

    out = []
    for k in k_range:
        for w in enumerate_admissible(spec, k + 1):
            b = invariant_basis(spec, k, [w], verify=False)
            p = correlation_set(b).p11
            out.append(RatioRow(k, (w,), b.d1, circle_ratio_min(p, b.d1, rho, samples)))
    return out


def delta_ratio_scan(spec, k_range: Iterable[int], rho: float, samples: int = 64) -> list[RatioRow]:
    """|Delta(t)| / |t|^(d1+d2) on |t| = rho for every unordered pair of words."""
    from .correlation import correlation_set, delta_poly, f_polys
    from .higher_block import invariant_basis
    from .sft import enumerate_admissible

    out = []
    for k in k_range:
        for w1, w2 in combinations(enumerate_admissible(spec, k + 1), 2):
            b = invariant_basis(spec, k, [w1, w2], verify=False)
            corr = correlation_set(b)
            D = delta_poly(corr, f_polys(b, corr))
            d = b.d1 + b.d2
            out.append(RatioRow(k, b.words, d, circle_ratio_min(D, d, rho, samples), b.d2))
    return out


def min_by_k(rows: Iterable[RatioRow]) -> dict[int, float]:
    out: dict[int, float] = {}
    for r in rows:
        out[r.k] = min(out.get(r.k, math.inf), r.ratio)
    return out


def annulus_ratio_max(M: IntPoly, d1: int, d2: int, rho: float, lam0: float,
                      radii: int = 8, samples: int = 64) -> float:
    """max of |M(t)| / (1 + |t|^d1 + |t|^d2) over a polar grid on rho <= |t| <= lam0."""
    if not M:
        return 0.0
    rs = np.linspace(rho, lam0, radii)
    z = (rs[:, None] * np.exp(2j * np.pi * np.arange(samples) / samples)[None, :]).ravel()
    vals = np.abs(np.polyval([float(c) for c in reversed(M.coeffs)], z))
    mod = np.abs(z)
    return float(np.max(vals / (1 + mod ** d1 + mod ** d2)))
