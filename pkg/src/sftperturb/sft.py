"""Subshifts of finite type given by a 0/1 transition matrix.

``transition[b][a] == 1`` means symbol ``a`` may be followed by symbol ``b``
(rows are indexed by the target symbol).  Words are tuples of symbol
indices; the ordering of admissible k-words used everywhere is the
lexicographic order of those tuples.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

from .poly import IntPoly, poly_det

Word = tuple[int, ...]


class ShiftError(ValueError):
    """Malformed shift definition or inadmissible word."""


@dataclass(frozen=True)
class SftSpec:
    transition: tuple[tuple[int, ...], ...]
    symbols: tuple[str, ...] = ()

    def __post_init__(self):
        t = tuple(tuple(int(x) for x in row) for row in self.transition)
        object.__setattr__(self, "transition", t)
        r = len(t)
        if r == 0:
            raise ShiftError("alphabet must be nonempty")
        if any(len(row) != r for row in t):
            raise ShiftError("transition matrix must be square")
        if any(x not in (0, 1) for row in t for x in row):
            raise ShiftError("transition entries must be 0 or 1")
        syms = tuple(self.symbols) if self.symbols else _default_symbols(r)
        if len(syms) != r:
            raise ShiftError(f"expected {r} symbol labels, got {len(syms)}")
        if len(set(syms)) != r:
            raise ShiftError("symbol labels must be unique")
        object.__setattr__(self, "symbols", syms)

    @property
    def r(self) -> int:
        return len(self.transition)

    def allowed(self, a: int, b: int) -> bool:
        """True when ``a`` may be followed by ``b``."""
        return self.transition[b][a] == 1

    def successors(self, a: int) -> list[int]:
        return [b for b in range(self.r) if self.transition[b][a]]

    def predecessors(self, b: int) -> list[int]:
        return [a for a in range(self.r) if self.transition[b][a]]

    def is_admissible(self, w: Sequence[int]) -> bool:
        if not w or any(not (0 <= a < self.r) for a in w):
            return False
        return all(self.allowed(a, b) for a, b in zip(w, w[1:]))

    def check_word(self, w: Sequence[int]) -> Word:
        w = tuple(w)
        if not self.is_admissible(w):
            raise ShiftError(f"word {self.format_word(w)!r} is not admissible")
        return w

    def parse_word(self, text: str) -> Word:
        """Parse ``"aab"`` (one-character labels) or ``"s1 s2 s1"``."""
        tokens = text.split() if any(ch.isspace() for ch in text.strip()) else list(text.strip())
        index = {s: i for i, s in enumerate(self.symbols)}
        try:
            w = tuple(index[tok] for tok in tokens)
        except KeyError as exc:
            raise ShiftError(f"unknown symbol {exc.args[0]!r} in {text!r}") from None
        if not w:
            raise ShiftError("empty word")
        return w

    def format_word(self, w: Iterable[int]) -> str:
        w = list(w)
        sep = "" if all(len(s) == 1 for s in self.symbols) else " "
        return sep.join(self.symbols[a] if 0 <= a < self.r else "?" for a in w)


def _default_symbols(r: int) -> tuple[str, ...]:
    if r <= 26:
        return tuple(chr(ord("a") + i) for i in range(r))
    return tuple(f"s{i}" for i in range(r))


@dataclass(frozen=True)
class SftDescriptor:
    irreducible: bool
    period_s: int
    is_cycle: bool
    lambda0: float
    lambda0_radius: float = 0.0
    components: tuple[tuple[int, ...], ...] = field(default=(), repr=False)


def full_shift(r: int = 2) -> SftSpec:
    return SftSpec(tuple(tuple(1 for _ in range(r)) for _ in range(r)))


def golden_mean_shift() -> SftSpec:
    # b may not follow b
    return SftSpec(((1, 1), (1, 0)))


def cycle_shift(r: int = 3) -> SftSpec:
    # i -> i+1 mod r
    return SftSpec(tuple(tuple(1 if b == (a + 1) % r else 0 for a in range(r)) for b in range(r)))


# ---------------------------------------------------------------------------
# graph structure

def _strong_components(spec: SftSpec) -> list[list[int]]:
    """Tarjan's algorithm on G_T (edge a -> b when T[b][a] = 1)."""
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    stack: list[int] = []
    on_stack: set[int] = set()
    comps: list[list[int]] = []
    counter = [0]

    def visit(v: int) -> None:
        index[v] = low[v] = counter[0]
        counter[0] += 1
        stack.append(v)
        on_stack.add(v)
        for w in spec.successors(v):
            if w not in index:
                visit(w)
                low[v] = min(low[v], low[w])
            elif w in on_stack:
                low[v] = min(low[v], index[w])
        if low[v] == index[v]:
            comp = []
            while True:
                w = stack.pop()
                on_stack.discard(w)
                comp.append(w)
                if w == v:
                    break
            comps.append(sorted(comp))

    for v in range(spec.r):
        if v not in index:
            visit(v)
    return sorted(comps)


def _component_period(spec: SftSpec, comp: Sequence[int]) -> int:
    """gcd of cycle lengths inside a strongly connected component (0 if acyclic)."""
    members = set(comp)
    level = {comp[0]: 0}
    queue = [comp[0]]
    g = 0
    for v in queue:
        for w in spec.successors(v):
            if w not in members:
                continue
            if w not in level:
                level[w] = level[v] + 1
                queue.append(w)
            else:
                g = gcd(g, level[v] + 1 - level[w])
    return abs(g)


def validate_sft(spec: SftSpec) -> SftDescriptor:
    """Check usability of the shift and describe its graph and growth rate."""
    from .spectra import pf_eigenvalue

    for i in range(spec.r):
        if not any(spec.transition[i]):
            raise ShiftError(f"row {spec.symbols[i]!r} is empty: symbol has no predecessor")
        if not any(row[i] for row in spec.transition):
            raise ShiftError(f"column {spec.symbols[i]!r} is empty: symbol has no successor")
    comps = _strong_components(spec)
    irreducible = len(comps) == 1
    outdeg = [len(spec.successors(a)) for a in range(spec.r)]
    indeg = [len(spec.predecessors(b)) for b in range(spec.r)]
    is_cycle = irreducible and all(d == 1 for d in outdeg + indeg)
    lam = pf_eigenvalue(char_poly_T(spec))
    if irreducible:
        period = _component_period(spec, comps[0])
    else:
        # period of the first component carrying the Perron root
        period = 1
        for comp in comps:
            sub = _restrict(spec, comp)
            if _component_period(spec, comp) == 0:
                continue
            lam_c = pf_eigenvalue(char_poly_T(sub))
            if abs(lam_c.value - lam.value) <= 1e-9:
                period = _component_period(spec, comp)
                break
    return SftDescriptor(irreducible, max(period, 1), is_cycle, lam.value, lam.radius, tuple(map(tuple, comps)))


def _restrict(spec: SftSpec, comp: Sequence[int]) -> SftSpec:
    rows = tuple(tuple(spec.transition[b][a] for a in comp) for b in comp)
    return SftSpec(rows, tuple(spec.symbols[a] for a in comp))


# ---------------------------------------------------------------------------
# words

def enumerate_admissible(spec: SftSpec, k: int) -> list[Word]:
    """All admissible k-words in lexicographic order."""
    if k < 1:
        raise ShiftError("word length must be positive")
    return list(_admissible(spec, k))


@lru_cache(maxsize=64)
def _admissible(spec: SftSpec, k: int) -> tuple[Word, ...]:
    words: list[Word] = [(a,) for a in range(spec.r)]
    for _ in range(k - 1):
        words = [w + (b,) for w in words for b in range(spec.r) if spec.transition[b][w[-1]]]
    return tuple(words)


@lru_cache(maxsize=256)
def path_counts(spec: SftSpec, length: int) -> tuple[int, ...]:
    """``path_counts(spec, j)[a]`` = number of admissible (j+1)-words starting with a."""
    counts = [1] * spec.r
    for _ in range(length):
        counts = [sum(counts[b] for b in spec.successors(a)) for a in range(spec.r)]
    return tuple(counts)


def count_extensions(spec: SftSpec, prefix: Sequence[int], k: int) -> int:
    """Number of admissible k-words beginning with ``prefix``."""
    if len(prefix) > k:
        return 0
    return path_counts(spec, k - len(prefix))[prefix[-1]]


def h_index(spec: SftSpec, w: Sequence[int]) -> int:
    """Least h >= 0 such that w[:h+1] determines the whole admissible word w."""
    w = spec.check_word(w)
    k = len(w)
    for h in range(k):
        if count_extensions(spec, w[: h + 1], k) == 1:
            return h
    raise AssertionError("unreachable: the full word determines itself")


# ---------------------------------------------------------------------------
# polynomials of T - t

def _t_minus(spec: SftSpec) -> list[list[IntPoly]]:
    t = IntPoly.t()
    return [
        [IntPoly.const(spec.transition[i][j]) - (t if i == j else 0) for j in range(spec.r)]
        for i in range(spec.r)
    ]


def minor(spec: SftSpec, delete_rows: Iterable[int], delete_cols: Iterable[int]) -> IntPoly:
    """Raw determinant of T - t with the given rows and columns removed."""
    rows, cols = set(delete_rows), set(delete_cols)
    if len(rows) != len(cols):
        raise ShiftError("deletion sets must have equal size")
    if any(not 0 <= x < spec.r for x in rows | cols):
        raise ShiftError("deletion index out of range")
    m = _t_minus(spec)
    keep_r = [i for i in range(spec.r) if i not in rows]
    keep_c = [j for j in range(spec.r) if j not in cols]
    return poly_det([[m[i][j] for j in keep_c] for i in keep_r])


def char_poly_T(spec: SftSpec) -> IntPoly:
    """det(t - T): the characteristic polynomial, monic."""
    return minor(spec, (), ()).normalized()


# ---------------------------------------------------------------------------
# text format

def parse_shift(text: str) -> SftSpec:
    """Read the ``symbols: ...`` + 0/1 rows format (``#`` starts a comment)."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines or not lines[0].startswith("symbols:"):
        raise ShiftError("first line must be 'symbols: a b ...'")
    symbols = tuple(lines[0][len("symbols:"):].split())
    rows = []
    for line in lines[1:]:
        try:
            rows.append(tuple(int(x) for x in line.split()))
        except ValueError:
            raise ShiftError(f"bad matrix row {line!r}") from None
    if len(rows) != len(symbols):
        raise ShiftError(f"expected {len(symbols)} matrix rows, got {len(rows)}")
    return SftSpec(tuple(rows), symbols)


def format_shift(spec: SftSpec) -> str:
    out = ["symbols: " + " ".join(spec.symbols)]
    out += [" ".join(str(x) for x in row) for row in spec.transition]
    return "\n".join(out) + "\n"


def load_shift(path) -> SftSpec:
    with open(path) as fh:
        return parse_shift(fh.read())
