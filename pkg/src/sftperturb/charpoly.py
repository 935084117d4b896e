"""Bordered determinants and the characteristic polynomial X(t) of T_k<C>.

The matrix whose determinant gives X(t) has the shape::

    [ A   | alpha_k e_{i_k} ]
    [ beta_k e_{j_k}^T | B  ]

with A = T - t (r x r) and B the small block of correlation polynomials.
Its determinant expands as a signed sum over equal-size subsets (S, T) of
border rows and columns; every sign comes from the parity of an explicit
permutation rather than from a formula.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .correlation import CorrelationSet, FPolys, correlation_set, delta_poly, f_polys
from .higher_block import InvariantBasis, invariant_basis
from .poly import IntPoly, poly_det
from .sft import ShiftError, SftSpec, _t_minus, char_poly_T, minor, path_counts


def permutation_sign(perm: Sequence[int]) -> int:
    """+1 or -1 for a permutation of range(len(perm)), via cycle counting."""
    n = len(perm)
    seen = [False] * n
    sign = 1
    for i in range(n):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _as_poly(x) -> IntPoly:
    return x if isinstance(x, IntPoly) else IntPoly.const(int(x))


@dataclass
class BorderedMatrix:
    A: list[list]
    B: list[list]
    col_borders: list[tuple[int, int]]  # (row index i_k in A, scalar alpha_k)
    row_borders: list[tuple[int, int]]  # (column index j_k in A, scalar beta_k)

    def __post_init__(self):
        n, m = len(self.A), len(self.B)
        if any(len(row) != n for row in self.A):
            raise ValueError("A must be square")
        if any(len(row) != m for row in self.B):
            raise ValueError("B must be square")
        if len(self.col_borders) != m or len(self.row_borders) != m:
            raise ValueError("need one border column and one border row per row of B")
        for idx, _ in self.col_borders + self.row_borders:
            if not 0 <= idx < n:
                raise ValueError(f"border index {idx} outside A")

    @property
    def n(self) -> int:
        return len(self.A)

    @property
    def m(self) -> int:
        return len(self.B)

    def full(self) -> list[list[IntPoly]]:
        """The explicit (n+m) x (n+m) matrix."""
        n, m = self.n, self.m
        zero = IntPoly()
        M = [[zero] * (n + m) for _ in range(n + m)]
        for i in range(n):
            for j in range(n):
                M[i][j] = _as_poly(self.A[i][j])
        for k, (i, a) in enumerate(self.col_borders):
            M[i][n + k] = _as_poly(a)
        for k, (j, b) in enumerate(self.row_borders):
            M[n + k][j] = _as_poly(b)
        for k in range(m):
            for l in range(m):
                M[n + k][n + l] = _as_poly(self.B[k][l])
        return M


def subset_sign(n: int, m: int, S: Sequence[int], T: Sequence[int],
                col_rows: Sequence[int], row_cols: Sequence[int]) -> int:
    """Parity of the permutation that routes border rows S to columns j_k and
    rows i_k (k in T) to border columns, keeping every other assignment
    order-preserving.  Assumes the indices i_k (k in T) and j_k (k in S) are distinct.
    """
    perm = [-1] * (n + m)
    used_cols = set()
    for k in S:
        perm[n + k] = row_cols[k]
        used_cols.add(row_cols[k])
    used_rows = set()
    for k in T:
        perm[col_rows[k]] = n + k
        used_rows.add(col_rows[k])
    rest_a_rows = [i for i in range(n) if i not in used_rows]
    rest_a_cols = [j for j in range(n) if j not in used_cols]
    for i, j in zip(rest_a_rows, rest_a_cols):
        perm[i] = j
    rest_b_rows = [n + k for k in range(m) if k not in S]
    rest_b_cols = [n + l for l in range(m) if l not in T]
    for i, j in zip(rest_b_rows, rest_b_cols):
        perm[i] = j
    return permutation_sign(perm)


def _submatrix_det(M: Sequence[Sequence], drop_rows, drop_cols) -> IntPoly:
    rows = [i for i in range(len(M)) if i not in drop_rows]
    cols = [j for j in range(len(M)) if j not in drop_cols]
    return poly_det([[_as_poly(M[i][j]) for j in cols] for i in rows])


def subset_terms(Mb: BorderedMatrix, minor_fn=None):
    """Yield (S, T, term) for every nonzero summand of the subset expansion."""
    n, m = Mb.n, Mb.m
    col_rows = [i for i, _ in Mb.col_borders]
    row_cols = [j for j, _ in Mb.row_borders]
    if minor_fn is None:
        minor_fn = lambda rows, cols: _submatrix_det(Mb.A, rows, cols)
    for size in range(m + 1):
        for S in combinations(range(m), size):
            J = {row_cols[k] for k in S}
            if len(J) < size:
                continue
            beta = 1
            for k in S:
                beta *= Mb.row_borders[k][1]
            if not beta:
                continue
            for T in combinations(range(m), size):
                I = {col_rows[k] for k in T}
                if len(I) < size:
                    continue
                alpha = 1
                for k in T:
                    alpha *= Mb.col_borders[k][1]
                if not alpha:
                    continue
                b_minor = _submatrix_det(Mb.B, set(S), set(T))
                if not b_minor:
                    continue
                a_minor = minor_fn(frozenset(I), frozenset(J))
                eps = subset_sign(n, m, S, T, col_rows, row_cols)
                yield S, T, b_minor * a_minor * (eps * alpha * beta)


def bordered_det(Mb: BorderedMatrix, minor_fn=None) -> IntPoly:
    """det of the bordered matrix by the subset expansion."""
    total = IntPoly()
    for _, _, term in subset_terms(Mb, minor_fn):
        total = total + term
    return total


def direct_det(Mb: BorderedMatrix) -> IntPoly:
    return poly_det(Mb.full())


# ---------------------------------------------------------------------------
# X(t) for one and two forbidden words

@lru_cache(maxsize=4096)
def _cached_minor(spec: SftSpec, rows: frozenset, cols: frozenset) -> IntPoly:
    return minor(spec, rows, cols)


@lru_cache(maxsize=64)
def _cached_charpoly(spec: SftSpec) -> IntPoly:
    return char_poly_T(spec)


def structure_matrix(spec: SftSpec, basis: InvariantBasis, corr: CorrelationSet, f: FPolys | None) -> BorderedMatrix:
    """The bordered matrix whose determinant is (up to sign) X(t)."""
    A = _t_minus(spec)
    if basis.w2 is None:
        B = [[-corr.p11]]
        cols = [(basis.a_exit, 1)]
        rows = [(basis.a0, -1)]
    else:
        B = [[-corr.p11, -corr.p12 + f.f11], [-corr.p21, -corr.p22 + f.f21]]
        cols = [(basis.a_exit, 1), (basis.b_exit, basis.gamma)]
        rows = [(basis.a0, -1), (basis.b0, -1)]
    return BorderedMatrix(A, B, cols, rows)


def _empty_term_sign(spec: SftSpec, basis: InvariantBasis) -> int:
    # the S = T = {} term is det(B) det(T - t) = (-1)^m Delta * (-1)^r chi
    m = 1 if basis.w2 is None else 2
    return (-1) ** (m + spec.r)


def minor_sum_M(spec: SftSpec, basis: InvariantBasis, corr: CorrelationSet, f: FPolys | None) -> IntPoly:
    """M(t): the nonempty-subset part of the expansion, in the sign convention X = Delta chi + M."""
    Mb = structure_matrix(spec, basis, corr, f)
    total = IntPoly()
    for S, T, term in subset_terms(Mb, lambda r, c: _cached_minor(spec, r, c)):
        if S:
            total = total + term
    return total * _empty_term_sign(spec, basis)


@dataclass
class PerturbedCharpoly:
    X: IntPoly           # monic
    m: int               # exponent of the nilpotent t^m co-factor
    Delta: IntPoly
    M: IntPoly
    chi: IntPoly
    basis: InvariantBasis
    corr: CorrelationSet
    f: FPolys | None = None
    raw: IntPoly = field(default_factory=IntPoly, repr=False)

    @property
    def identity_holds(self) -> bool:
        return self.X == self.Delta * self.chi + self.M

    def full_charpoly(self) -> IntPoly:
        return self.X.shift(self.m)


def dim_Vk(spec: SftSpec, k: int) -> int:
    return sum(path_counts(spec, k - 1))


def _assemble(spec: SftSpec, basis: InvariantBasis) -> PerturbedCharpoly:
    corr = correlation_set(basis)
    f = f_polys(basis, corr) if basis.w2 is not None else None
    Mb = structure_matrix(spec, basis, corr, f)
    raw = bordered_det(Mb, lambda r, c: _cached_minor(spec, r, c))
    X = raw.normalized()
    delta = delta_poly(corr, f)
    M = minor_sum_M(spec, basis, corr, f)
    chi = _cached_charpoly(spec)
    m = dim_Vk(spec, basis.k) - X.degree
    if X.degree != basis.dim:
        raise ArithmeticError(f"deg X = {X.degree} but dim W = {basis.dim}")
    return PerturbedCharpoly(X, m, delta, M, chi, basis, corr, f, raw)


def perturbed_charpoly_one(spec: SftSpec, k: int, w: Sequence[int], verify: bool = False) -> PerturbedCharpoly:
    w = spec.check_word(w)
    if len(w) != k + 1:
        raise ShiftError(f"word must have length {k + 1}")
    return _assemble(spec, invariant_basis(spec, k, [w], verify=verify))


def perturbed_charpoly_two(spec: SftSpec, k: int, C: Sequence[Sequence[int]], verify: bool = False) -> PerturbedCharpoly:
    words = [spec.check_word(w) for w in C]
    if len(words) != 2 or words[0] == words[1]:
        raise ShiftError("need two distinct forbidden words")
    return _assemble(spec, invariant_basis(spec, k, words, verify=verify))


def perturbed_charpoly(spec: SftSpec, k: int, C: Sequence[Sequence[int]], verify: bool = False) -> PerturbedCharpoly:
    if len(C) == 1:
        return perturbed_charpoly_one(spec, k, C[0], verify)
    return perturbed_charpoly_two(spec, k, C, verify)
