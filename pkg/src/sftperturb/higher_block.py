"""Higher-block operators T_k, forbidden-word edits and the invariant subspace.

Every vector that matters here (psi_k([a]), T_k^i[eta w]) is the indicator
of a *cylinder*: the set of admissible k-words beginning with a fixed prefix.
Cylinders form a laminar family, so a handful of them can be written in the
coordinates of the atoms of the family (cylinder minus its largest
sub-cylinders).  That embedding is injective on their span, which lets all
membership tests and relations be solved exactly in a space of dimension
about r + 2k instead of dim V_k.  Dense V_k vectors are still available for
cross-checks via :func:`materialize`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .linalg import Echelon, echelon_for
from .sft import ShiftError, SftSpec, Word, count_extensions, enumerate_admissible, h_index


class StructureError(RuntimeError):
    """An invariant that the theory guarantees failed to hold (implementation bug)."""


# ---------------------------------------------------------------------------
# T_k as a sparse matrix

@dataclass(frozen=True)
class ShiftMatrixK:
    spec: SftSpec
    k: int
    states: tuple[Word, ...]
    # succ[v] lists the states u with entry (u, v) = 1
    succ: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.states)

    @property
    def index(self) -> dict[Word, int]:
        return _state_index(self.states)

    def entry(self, u: Word, v: Word) -> int:
        idx = self.index
        return int(idx[u] in self.succ[idx[v]])

    def nnz(self) -> int:
        return sum(len(s) for s in self.succ)

    def dense(self) -> list[list[int]]:
        m = [[0] * self.n for _ in range(self.n)]
        for v, us in enumerate(self.succ):
            for u in us:
                m[u][v] = 1
        return m

    def apply(self, vec: Sequence) -> list:
        out = [0] * self.n
        for v, x in enumerate(vec):
            if x:
                for u in self.succ[v]:
                    out[u] += x
        return out


@lru_cache(maxsize=32)
def _state_index(states: tuple[Word, ...]) -> dict[Word, int]:
    return {w: i for i, w in enumerate(states)}


def build_Tk(spec: SftSpec, k: int) -> ShiftMatrixK:
    """T_k on admissible k-words: [a1..ak] -> sum of [a2..ak *]."""
    states = tuple(enumerate_admissible(spec, k))
    idx = _state_index(states)
    succ = []
    for v in states:
        tail = v[1:]
        succ.append(tuple(idx[tail + (b,)] for b in spec.successors(v[-1])))
    return ShiftMatrixK(spec, k, states, tuple(succ))


def psi_k(spec: SftSpec, k: int, a: int) -> list[int]:
    """Indicator of the admissible k-words beginning with symbol a."""
    if not 0 <= a < spec.r:
        raise ShiftError(f"symbol index {a} out of range")
    return [1 if w[0] == a else 0 for w in enumerate_admissible(spec, k)]


# ---------------------------------------------------------------------------
# forbidden words

@dataclass(frozen=True)
class ForbidSet:
    words: tuple[Word, ...]

    def __post_init__(self):
        words = tuple(tuple(w) for w in self.words)
        object.__setattr__(self, "words", words)
        if not 1 <= len(words) <= 2:
            raise ShiftError("forbid one or two words")
        if len({len(w) for w in words}) != 1:
            raise ShiftError("forbidden words must share one length")
        if len(words[0]) < 2:
            raise ShiftError("forbidden words need length k+1 >= 2")
        if len(set(words)) != len(words):
            raise ShiftError("forbidden words must be distinct")

    @property
    def k(self) -> int:
        return len(self.words[0]) - 1

    def check(self, spec: SftSpec) -> None:
        for w in self.words:
            spec.check_word(w)


def apply_forbid(Tk: ShiftMatrixK, C: ForbidSet) -> ShiftMatrixK:
    """Zero the (eta w, beta w) entry of T_k for each forbidden word w."""
    if C.k != Tk.k:
        raise ShiftError(f"forbidden words have length {C.k + 1}, expected {Tk.k + 1}")
    C.check(Tk.spec)
    idx = Tk.index
    succ = [list(s) for s in Tk.succ]
    for w in C.words:
        u, v = idx[w[1:]], idx[w[:-1]]
        if u not in succ[v]:
            raise ShiftError(f"entry for {Tk.spec.format_word(w)!r} is already 0")
        succ[v].remove(u)
    return ShiftMatrixK(Tk.spec, Tk.k, Tk.states, tuple(tuple(s) for s in succ))


# ---------------------------------------------------------------------------
# cylinder vectors

Formal = Mapping[Word, int]  # prefix -> coefficient


def materialize(spec: SftSpec, k: int, vec: Formal) -> list:
    """Dense V_k coordinates of a formal combination of cylinder indicators."""
    out = []
    for s in enumerate_admissible(spec, k):
        out.append(sum(vec.get(s[:l], 0) for l in range(1, k + 1)))
    return out


def cylinder_image(spec: SftSpec, prefix: Word) -> dict[Word, int]:
    """T_k applied to the cylinder of ``prefix`` (for any k >= len(prefix))."""
    if len(prefix) >= 2:
        return {prefix[1:]: 1}
    return {(b,): 1 for b in spec.successors(prefix[0])}


class AtomCoordinates:
    """Atom coordinates for a fixed laminar family of cylinders in V_k."""

    def __init__(self, spec: SftSpec, k: int, prefixes: Iterable[Word]):
        self.spec, self.k = spec, k
        nodes = sorted({tuple(p) for p in prefixes if count_extensions(spec, p, k) > 0}, key=lambda p: (len(p), p))
        node_set = set(nodes)
        children: dict[Word, list[Word]] = {p: [] for p in nodes}
        for q in nodes:
            for l in range(len(q) - 1, 0, -1):
                if q[:l] in node_set:
                    children[q[:l]].append(q)
                    break
        self.atoms = [
            p for p in nodes
            if count_extensions(spec, p, k) - sum(count_extensions(spec, c, k) for c in children[p]) > 0
        ]
        self.position = {p: i for i, p in enumerate(self.atoms)}
        self.node_set = node_set
        self.dim = len(self.atoms)

    def cylinder(self, prefix: Word) -> list[int]:
        prefix = tuple(prefix)
        if prefix not in self.node_set and count_extensions(self.spec, prefix, self.k) > 0:
            raise KeyError(f"prefix {prefix} is not part of this family")
        l = len(prefix)
        return [1 if a[:l] == prefix else 0 for a in self.atoms]

    def vector(self, vec: Formal) -> list:
        out = [0] * self.dim
        for p, c in vec.items():
            if c:
                for i, x in enumerate(self.cylinder(p)):
                    if x:
                        out[i] += c
        return out


# ---------------------------------------------------------------------------
# the invariant subspace W_k<C>

ONE_WORD, DISJOINT, CASE_A, CASE_B, CASE_C, UNCLASSIFIED = (
    "OneWord", "Disjoint", "CaseA", "CaseB", "CaseC", "Unclassified",
)


@dataclass
class InvariantBasis:
    spec: SftSpec
    k: int
    words: tuple[Word, ...]      # ordered so that h1 <= h2
    d1: int
    h1: int
    d2: int | None = None
    h2: int | None = None
    gamma: int = 1
    alphas: dict[int, int] = field(default_factory=dict)
    case_tag: str = ONE_WORD
    # prefixes of the basis cylinders: psi_k images, then T_k^j[eta w1], then T_k^j[eta w2]
    basis_prefixes: tuple[Word, ...] = ()

    @property
    def delta(self) -> int:
        return 0 if self.d2 is None else self.h2 - self.d2

    @property
    def dim(self) -> int:
        return len(self.basis_prefixes)

    @property
    def w1(self) -> Word:
        return self.words[0]

    @property
    def w2(self) -> Word | None:
        return self.words[1] if len(self.words) > 1 else None

    @property
    def a0(self) -> int:
        return self.w1[0]

    @property
    def a_exit(self) -> int:
        """a_{d1+1}: T_k^{d1}[eta w1] = psi_k([a_{d1+1}])."""
        return self.w1[self.d1 + 1]

    @property
    def b0(self) -> int:
        return self.w2[0]

    @property
    def b_exit(self) -> int:
        """b_{d2+1}, the symbol multiplying gamma in the relation."""
        return self.w2[self.d2 + 1]

    @property
    def exponents(self) -> list[int]:
        """The retained exponents i_1 < ... < i_n."""
        return sorted(self.alphas)

    def basis_vectors(self) -> list[list[int]]:
        return [materialize(self.spec, self.k, {p: 1}) for p in self.basis_prefixes]

    def describe(self) -> str:
        fw = self.spec.format_word
        lines = [f"k: {self.k}", f"w1: {fw(self.w1)}", f"d1: {self.d1}", f"h1: {self.h1}"]
        if self.w2 is not None:
            lines += [
                f"w2: {fw(self.w2)}", f"d2: {self.d2}", f"h2: {self.h2}",
                f"delta: {self.delta}", f"gamma: {self.gamma}",
                "alphas: " + (", ".join(f"i={i}:{a:+d}" for i, a in sorted(self.alphas.items())) or "none"),
            ]
        lines.append(f"case: {self.case_tag}")
        lines.append(f"dim W: {self.dim}")
        return "\n".join(lines)


def order_pair(spec: SftSpec, words: Sequence[Word]) -> tuple[Word, ...]:
    """Order forbidden words by (h(eta w), w)."""
    return tuple(sorted(words, key=lambda w: (h_index(spec, w[1:]), w)))


def _suffix_cylinders(w: Word) -> list[Word]:
    # T_k^j[eta w] is the cylinder of w[j+1:]
    return [w[j + 1:] for j in range(len(w) - 1)]


def _first_landing(e: Echelon, coords: AtomCoordinates, w: Word) -> tuple[int, dict]:
    """Least d with T_k^d[eta w] in the span held by ``e``, and its expression."""
    for d, pre in enumerate(_suffix_cylinders(w)):
        combo = e.express(coords.cylinder(pre))
        if combo is not None:
            return d, combo
    raise StructureError(f"T_k powers of [eta {w}] never enter the subspace")


def invariant_basis(spec: SftSpec, k: int, C: ForbidSet | Sequence[Sequence[int]], verify: bool = True) -> InvariantBasis:
    """Basis of W_k<C> and the relation data for one or two forbidden words."""
    if not isinstance(C, ForbidSet):
        C = ForbidSet(tuple(tuple(w) for w in C))
    if C.k != k:
        raise ShiftError(f"forbidden words must have length {k + 1}")
    C.check(spec)
    words = order_pair(spec, C.words) if len(C.words) == 2 else C.words
    w1 = words[0]
    family = [(a,) for a in range(spec.r)] + _suffix_cylinders(w1)
    if len(words) == 2:
        family += _suffix_cylinders(words[1])
    coords = AtomCoordinates(spec, k, family)

    psi = echelon_for(coords.dim)
    for a in range(spec.r):
        if not psi.add(coords.cylinder((a,)), ("psi", a)):
            raise StructureError("psi_k images are dependent")
    d1, _ = _first_landing(psi, coords, w1)
    h1 = d1

    span = echelon_for(coords.dim)
    for a in range(spec.r):
        span.add(coords.cylinder((a,)), ("psi", a))
    prefixes = [(a,) for a in range(spec.r)]
    for j in range(d1):
        pre = w1[j + 1:]
        if not span.add(coords.cylinder(pre), ("u", j)):
            raise StructureError(f"T_k^{j}[eta w1] dependent modulo psi_k(V_1)")
        prefixes.append(pre)

    basis = InvariantBasis(spec, k, tuple(words), d1=d1, h1=h1)
    if len(words) == 1:
        basis.basis_prefixes = tuple(prefixes)
        if verify:
            verify_invariance(basis)
        return basis

    w2 = words[1]
    h2, _ = _first_landing(psi, coords, w2)
    d2, combo = _first_landing(span, coords, w2)
    b = w2[d2 + 1]
    alphas: dict[int, int] = {}
    gamma = 0
    for lab, x in combo.items():
        if x.denominator != 1:
            raise StructureError(f"non-integral relation coefficient {x} at {lab}")
        kind, idx = lab
        if kind == "u":
            alphas[idx] = int(x)
        elif idx == b:
            gamma = int(x)
        else:
            raise StructureError(
                f"relation involves psi_k([{spec.symbols[idx]}]) but only psi_k([{spec.symbols[b]}]) may appear"
            )
    for j in range(d2):
        pre = w2[j + 1:]
        if not span.add(coords.cylinder(pre), ("v", j)):
            raise StructureError(f"T_k^{j}[eta w2] dependent modulo W_k<w1>")
        prefixes.append(pre)

    basis.d2, basis.h2 = d2, h2
    basis.gamma, basis.alphas = gamma, alphas
    basis.basis_prefixes = tuple(prefixes)
    basis.case_tag = _case_from_signature(basis)
    if verify:
        verify_invariance(basis)
    return basis


def _case_from_signature(basis: InvariantBasis) -> str:
    if basis.d2 == basis.h2:
        return DISJOINT if basis.gamma == 1 and not basis.alphas else UNCLASSIFIED
    vals = [basis.alphas[i] for i in basis.exponents]
    if basis.gamma == 1 and vals and all(v == -1 for v in vals):
        return CASE_A
    if basis.gamma == 0 and vals == [-1, 1]:
        return CASE_B
    if basis.gamma == 0 and vals == [1]:
        return CASE_C
    return UNCLASSIFIED


def perturbed_image(spec: SftSpec, words: Sequence[Word], prefix: Word) -> dict[Word, int]:
    """T_k<C> applied to the cylinder of ``prefix``, as a formal combination."""
    out = dict(cylinder_image(spec, prefix))
    l = len(prefix)
    for w in words:
        if w[:-1][:l] == prefix:  # beta w lies in the cylinder
            out[w[1:]] = out.get(w[1:], 0) - 1
    return out


def verify_invariance(basis: InvariantBasis) -> None:
    """Check independence, T_k<C>-closure and nilpotency modulo W; raise on failure."""
    spec, k, words = basis.spec, basis.k, basis.words
    family = set(basis.basis_prefixes) | {(a,) for a in range(spec.r)}
    images = {}
    for p in basis.basis_prefixes:
        img = perturbed_image(spec, words, p)
        images[p] = img
        family |= set(img)
    coords = AtomCoordinates(spec, k, family)
    e = echelon_for(coords.dim)
    for p in basis.basis_prefixes:
        if not e.add(coords.cylinder(p), p):
            raise StructureError(f"basis vector {p} is dependent")
    if len(e) != spec.r + basis.d1 + (basis.d2 or 0):
        raise StructureError("dimension of W_k<C> is not r + d1 + d2")
    for p, img in images.items():
        if e.express(coords.vector(img)) is None:
            raise StructureError(f"T_k<C> maps basis cylinder {p} outside W_k<C>")


def verify_invariance_dense(basis: InvariantBasis) -> None:
    """Dense V_k version of :func:`verify_invariance`, including quotient nilpotency."""
    spec, k = basis.spec, basis.k
    Tc = apply_forbid(build_Tk(spec, k), ForbidSet(basis.words))
    vecs = basis.basis_vectors()
    e = echelon_for(Tc.n, len(vecs))
    for i, v in enumerate(vecs):
        if not e.add(v, i):
            raise StructureError("basis vectors are dependent")
    for v in vecs:
        if not e.contains(Tc.apply(v)):
            raise StructureError("W_k<C> is not T_k<C>-invariant")
    power = max(k - 1, 0)
    for i in range(Tc.n):
        v = [0] * Tc.n
        v[i] = 1
        for _ in range(power):
            v = Tc.apply(v)
        if not e.contains(v):
            raise StructureError(f"T_k<C> is not nilpotent modulo W on state {Tc.states[i]}")


# ---------------------------------------------------------------------------
# two-word classification

@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    required: bool = True  # informational checks do not count as violations


@dataclass
class PairClassification:
    case_tag: str
    checks: list[Check]

    @property
    def ok(self) -> bool:
        return self.case_tag != UNCLASSIFIED and all(c.passed for c in self.checks if c.required)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.required and not c.passed]

    def describe(self) -> str:
        lines = [f"case: {self.case_tag}"]
        for c in self.checks:
            mark = ("pass" if c.passed else "FAIL") if c.required else ("info" if c.passed else "note")
            lines.append(f"  [{mark}] {c.name}" + (f" ({c.detail})" if c.detail else ""))
        return "\n".join(lines)


def _same_set(spec, k, p: Word, q: Word) -> bool:
    if p[: len(q)] != q and q[: len(p)] != p:
        return False
    return count_extensions(spec, p, k) == count_extensions(spec, q, k)


def _disjoint(p: Word, q: Word) -> bool:
    return p[: len(q)] != q and q[: len(p)] != p


def switched_truncation_power(B: Word, Bn: Word) -> tuple[int | None, Word]:
    """Write Bn = B^e X with X a prefix of B whose last symbol is switched.

    Returns (e, X), or (None, remainder) when Bn has no such form.
    """
    e, rest = 0, tuple(Bn)
    while len(rest) > len(B) and rest[: len(B)] == B:
        rest, e = rest[len(B):], e + 1
    if rest and len(rest) <= len(B) and rest[:-1] == B[: len(rest) - 1] and rest[-1] != B[len(rest) - 1]:
        return e, rest
    return None, rest


def classify_pair(basis: InvariantBasis) -> PairClassification:
    """Case tag for a two-word basis plus a pass/fail record of the structural conditions."""
    from .correlation import is_simple, overlap_coeffs

    if basis.w2 is None:
        raise ValueError("classification needs two forbidden words")
    spec, k = basis.spec, basis.k
    w1, w2 = basis.w1, basis.w2
    tag = basis.case_tag
    checks: list[Check] = []
    if tag == DISJOINT:
        checks.append(Check("relation lands in psi_k(V_1) with gamma=1", basis.gamma == 1 and not basis.alphas))
        return PairClassification(tag, checks)

    d1, d2, h1, h2, delta = basis.d1, basis.d2, basis.h1, basis.h2, basis.delta
    b = w2[d2 + 1]
    ims = basis.exponents
    n = len(ims)
    checks.append(Check("signature matches a case", tag != UNCLASSIFIED,
                        f"gamma={basis.gamma}, alphas={[basis.alphas[i] for i in ims]}"))
    checks.append(Check("i_1 = d1 - delta", bool(ims) and ims[0] == d1 - delta, f"i_1={ims[0] if ims else None}"))
    s0 = w2[d2 + 1: h2 + 2]
    s = [s0] + [w1[i + 1: h1 + 2] for i in ims]
    # supports of the relation's vectors are the cylinders of s_m
    supp_ok = _same_set(spec, k, w2[d2 + 1:], s0) and all(
        _same_set(spec, k, w1[i + 1:], sm) for i, sm in zip(ims, s[1:])
    )
    checks.append(Check("supports are the cylinders of s_0..s_n", supp_ok))
    fw = spec.format_word
    if tag == CASE_A:
        disjoint = all(_disjoint(s[i], s[j]) for i in range(len(s)) for j in range(i + 1, len(s)))
        exhaust = sum(count_extensions(spec, x, k) for x in s) == count_extensions(spec, (b,), k)
        checks.append(Check("(A)(i) supports pairwise disjoint", disjoint))
        checks.append(Check("(A)(i) supports exhaust words beginning with b_(d2+1)", exhaust and all(x[0] == b for x in s)))
        checks.append(Check("(A)(ii) gamma=1 and all alpha=-1", basis.gamma == 1 and all(basis.alphas[i] == -1 for i in ims)))
        blocks = [w1[ims[m] + 1: ims[m + 1] + 1] for m in range(n - 1)] + [w1[ims[-1] + 1: h1 + 2]]
        checks.append(Check("(A) blocks begin with b_(d2+1)", all(B and B[0] == b for B in blocks),
                            " ".join(fw(B) for B in blocks)))
        if n >= 2:
            common = blocks[0]
            last = blocks[-1]
            same = all(B == common for B in blocks[:-1])
            e, tail = switched_truncation_power(common, last)
            checks.append(Check("(A)(iii) B_1 = ... = B_{n-1}", same))
            checks.append(Check("(A)(iii) common block is simple", is_simple(common)))
            # B_n = B^e (B* with last symbol switched); e = 1 shows up whenever the
            # switched tail is a single symbol, because words starting with that
            # symbol lie outside the words beginning with b
            checks.append(Check("(A)(iii) B_n is a truncation of B with last symbol switched",
                                e == 0, f"B_n = B^{e} + {fw(tail) if tail else '-'}", required=False))
            checks.append(Check("(A)(iii) B_n = B^e B*^ with e = 0, or e = 1 and |B*^| = 1",
                                e == 0 or (e == 1 and len(tail) == 1), f"e={e}"))
        checks.append(Check("s_0 and s_1 differ exactly in the last symbol",
                            len(s[0]) == len(s[1]) and s[0][:-1] == s[1][:-1] and s[0][-1] != s[1][-1]))
        c11 = overlap_coeffs(w1, w1, d1)  # index i -> c_{d1-i}
        c21 = overlap_coeffs(w2, w1, d1)
        bad11 = [i for i in range(1, min(delta, d1 + 1)) if c11[i]]
        bad21 = [i for i in range(0, min(delta - spec.r + 1, d1 + 1)) if c21[i]]
        checks.append(Check("c11_{d1-i} = 0 for 0<i<delta", not bad11, f"violations at i={bad11}" if bad11 else ""))
        checks.append(Check("c21_{d1-i} = 0 for i<delta-r+1", not bad21, f"violations at i={bad21}" if bad21 else ""))
    elif tag == CASE_B:
        checks.append(Check("(B)(i) n = 2", n == 2))
        if n == 2:
            ok = (
                _disjoint(s[0], s[1])
                and s[0][: len(s[2])] == s[2] and s[1][: len(s[2])] == s[2]
                and count_extensions(spec, s[0], k) + count_extensions(spec, s[1], k) == count_extensions(spec, s[2], k)
            )
            checks.append(Check("(B)(ii) S_0, S_1 disjoint and exhaust S_2", ok))
            checks.append(Check("s_0 and s_1 differ exactly in the last symbol",
                                len(s[0]) == len(s[1]) and s[0][:-1] == s[1][:-1] and s[0][-1] != s[1][-1]))
        checks.append(Check("(B)(iii) gamma=0, alpha=(-1,+1)", basis.gamma == 0 and [basis.alphas[i] for i in ims] == [-1, 1]))
    elif tag == CASE_C:
        checks.append(Check("(C)(i) n = 1", n == 1))
        checks.append(Check("(C)(ii) S_0 = S_1", n == 1 and _same_set(spec, k, s[0], s[1])))
        checks.append(Check("(C)(iii) gamma=0, alpha=+1", basis.gamma == 0 and [basis.alphas[i] for i in ims] == [1]))
    return PairClassification(tag, checks)
