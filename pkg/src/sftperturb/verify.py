"""Exhaustive structural checks with a pass/fail ledger.

Every check runs over all admissible words (and, where relevant, all
unordered pairs of words) up to a given length and reports the instances
that violate it.  Failures are returned as data; nothing here raises on a
violated statement.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

from .charpoly import PerturbedCharpoly, dim_Vk, perturbed_charpoly
from .correlation import fundamental_period, overlap_coeffs
from .higher_block import (
    ForbidSet, StructureError, apply_forbid, build_Tk, classify_pair,
    invariant_basis, psi_k, verify_invariance_dense,
)
from .sft import SftSpec, enumerate_admissible, h_index, validate_sft
from .spectra import brute_force_charpoly

MAX_FAILURES_KEPT = 20


@dataclass
class CheckResult:
    name: str
    statement: str
    instances: int = 0
    failures: list[str] = field(default_factory=list)
    failure_count: int = 0

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def record(self, ok: bool, instance: str = "") -> None:
        self.instances += 1
        if not ok:
            self.failure_count += 1
            if len(self.failures) < MAX_FAILURES_KEPT:
                self.failures.append(instance)


@dataclass
class VerifyLedger:
    results: dict[str, CheckResult] = field(default_factory=dict)

    def check(self, name: str, statement: str) -> CheckResult:
        if name not in self.results:
            self.results[name] = CheckResult(name, statement)
        return self.results[name]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results.values())

    def failed(self) -> list[CheckResult]:
        return [r for r in self.results.values() if not r.passed]

    def format(self) -> str:
        lines = []
        for r in self.results.values():
            status = "PASS" if r.passed else "FAIL"
            lines.append(f"{status}  {r.name}: {r.instances} instances, {r.failure_count} failures  [{r.statement}]")
            for f in r.failures[:5]:
                lines.append(f"      {f}")
        return "\n".join(lines)


def _check_higher_block(spec: SftSpec, k: int, ledger: VerifyLedger, hbounds: bool) -> None:
    fw = spec.format_word
    Tk = build_Tk(spec, k)
    states = Tk.states
    psis = [psi_k(spec, k, a) for a in range(spec.r)]

    inter = ledger.check("intertwining", "psi_k T = T_k psi_k")
    for a in range(spec.r):
        lhs = [0] * Tk.n
        for b in spec.successors(a):
            lhs = [x + y for x, y in zip(lhs, psis[b])]
        inter.record(Tk.apply(psis[a]) == lhs, f"k={k} symbol {spec.symbols[a]}")

    nil = ledger.check("nilpotency", "T_k^(k-1)[w] = psi_k([last symbol of w])")
    risd = ledger.check("determination index", "least i with T_k^i[w] in psi_k(V_1) is h(w), and T_k^h[w] = psi_k([a_(h+1)])")
    hb = ledger.check("h bounds", "k - r <= h(w) <= k - 1")
    first = [w[0] for w in states]
    for idx, w in enumerate(states):
        v = [0] * Tk.n
        v[idx] = 1
        land = None
        image_at_land = None
        for i in range(k):
            if land is None and _in_psi_span(v, first, spec.r):
                land, image_at_land = i, v
            if i == k - 1:
                nil.record(v == psis[w[-1]], f"k={k} w={fw(w)}")
            v = Tk.apply(v)
        h = h_index(spec, w)
        risd.record(land == h and image_at_land == psis[w[h]], f"k={k} w={fw(w)} h={h} landed at {land}")
        lo = k - spec.r if hbounds else 0
        hb.record(lo <= h <= k - 1, f"k={k} w={fw(w)} h={h}")


def _in_psi_span(v, first, r) -> bool:
    # psi_k(V_1) = vectors constant on each first-symbol class
    seen: dict[int, int] = {}
    for x, a in zip(v, first):
        if seen.setdefault(a, x) != x:
            return False
    return True


def _check_word_periods(spec: SftSpec, k: int, ledger: VerifyLedger) -> None:
    fw = spec.format_word
    div = ledger.check("period divisibility", "c_(d-i) = 1 implies p | i or i >= k + 2 - p")
    bcopy = ledger.check("block copies", "a full copy of the period block starts only at multiples of p")
    for w in enumerate_admissible(spec, k + 1):
        d = h_index(spec, w[1:])
        p = fundamental_period(w, d)
        c = overlap_coeffs(w, w, d, cross=False)
        ok = all(i % p == 0 or i >= k + 2 - p for i in range(1, d + 1) if c[i])
        div.record(ok, f"w={fw(w)} p={p}")
        if p <= k:
            B = w[:p]
            starts = [i for i in range(len(w) - p + 1) if w[i:i + p] == B]
            bcopy.record(all(i % p == 0 for i in starts), f"w={fw(w)} p={p} starts={starts}")


def _oracle(spec, k, words, res: PerturbedCharpoly, ledger: VerifyLedger, cap: int, Tk=None) -> None:
    fw = spec.format_word
    label = f"k={k} C={{{', '.join(fw(w) for w in words)}}}"
    deg = ledger.check("degree law", "deg X = r + d1 + d2 and m = dim V_k - deg X >= 0")
    b = res.basis
    deg.record(res.X.degree == spec.r + b.d1 + (b.d2 or 0) and res.m >= 0, label)
    ident = ledger.check("X = Delta chi + M", "X(t) equals Delta(t) chi_T(t) plus the signed minor sum M(t)")
    ident.record(res.X == res.Delta * res.chi + res.M, label)
    if dim_Vk(spec, k) <= cap:
        Tk = Tk or build_Tk(spec, k)
        orc = ledger.check("oracle equivalence", "X(t) t^m equals the brute-force characteristic polynomial of T_k<C> (X = Delta chi + M)")
        bf = brute_force_charpoly(apply_forbid(Tk, ForbidSet(tuple(words))).dense(), cap=cap)
        orc.record(bf == res.X.shift(res.m), label)


def verify_suite(
    spec: SftSpec,
    k_max: int,
    pair_k_max: int | None = None,
    dense_pair_k_max: int = 4,
    oracle_cap: int = 512,
    charpoly_fn: Callable[..., PerturbedCharpoly] = perturbed_charpoly,
) -> VerifyLedger:
    """Run every exhaustive check for word lengths up to k_max + 1.

    Pairs are checked up to ``pair_k_max`` (default k_max); the dense
    quotient-nilpotency check on pairs stops at ``dense_pair_k_max``.
    ``charpoly_fn`` is injectable so tests can feed a deliberately broken
    implementation through the ledger.
    """
    ledger = VerifyLedger()
    desc = validate_sft(spec)
    hbounds = desc.irreducible and not desc.is_cycle
    pair_k_max = k_max if pair_k_max is None else pair_k_max
    fw = spec.format_word
    for k in range(1, k_max + 1):
        _check_higher_block(spec, k, ledger, hbounds)
        _check_word_periods(spec, k, ledger)
        Tk = build_Tk(spec, k)
        inv = ledger.check("invariant subspace", "basis independent, dim r + d1 (+ d2), closed under T_k<C>, nilpotent on the quotient")
        for w in enumerate_admissible(spec, k + 1):
            label = f"k={k} w={fw(w)}"
            try:
                b = invariant_basis(spec, k, [w], verify=True)
                verify_invariance_dense(b)
                inv.record(True)
            except StructureError as exc:
                inv.record(False, f"{label}: {exc}")
                continue
            _oracle(spec, k, [w], charpoly_fn(spec, k, [w]), ledger, oracle_cap, Tk)
        if k > pair_k_max:
            continue
        sig = ledger.check("case signatures", "every pair is Disjoint, CaseA, CaseB or CaseC with the matching (gamma, alpha) pattern")
        for w1, w2 in combinations(enumerate_admissible(spec, k + 1), 2):
            label = f"k={k} C={{{fw(w1)}, {fw(w2)}}}"
            try:
                b = invariant_basis(spec, k, [w1, w2], verify=True)
                if k <= dense_pair_k_max:
                    verify_invariance_dense(b)
                inv.record(True)
            except StructureError as exc:
                inv.record(False, f"{label}: {exc}")
                continue
            sig.record(b.case_tag != "Unclassified", label)
            if b.case_tag != "Disjoint":
                for chk in classify_pair(b).checks:
                    if chk.required:
                        ledger.check(f"{b.case_tag}: {chk.name}", "case structure").record(chk.passed, f"{label} {chk.detail}")
            _oracle(spec, k, [w1, w2], charpoly_fn(spec, k, [w1, w2]), ledger, oracle_cap, Tk)
    return ledger
