"""Overlap coefficients, correlation polynomials and the Delta(t) determinant.

Coefficient vectors are stored by shift: ``c[i]`` is the coefficient of
t^(d-i), so ``c[0]`` multiplies the top power.  For a cross-correlation the
shift-0 slot is always 0.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .poly import IntPoly
from .sft import Word


def overlap_coeffs(w_u: Sequence[int], w_v: Sequence[int], d: int, cross: bool | None = None) -> tuple[int, ...]:
    """c[i] = 1 when the prefix of w_u of length k+1-i equals the suffix of w_v from i.

    ``cross`` defaults to ``w_u != w_v``; cross-correlations skip the shift i = 0.
    """
    w_u, w_v = tuple(w_u), tuple(w_v)
    if len(w_u) != len(w_v):
        raise ValueError("overlap needs words of equal length")
    k = len(w_u) - 1
    if not 0 <= d <= k:
        raise ValueError(f"d={d} outside [0, {k}]")
    if cross is None:
        cross = w_u != w_v
    out = []
    for i in range(d + 1):
        if i == 0 and cross:
            out.append(0)
        else:
            out.append(int(w_u[: k + 1 - i] == w_v[i:]))
    return tuple(out)


def correlation_poly(coeffs: Sequence[int]) -> IntPoly:
    """sum of coeffs[i] * t^(d-i) with d = len(coeffs) - 1."""
    d = len(coeffs) - 1
    return IntPoly([coeffs[d - e] for e in range(d + 1)])


def fundamental_period(w: Sequence[int], d: int) -> int:
    """Least p in 1..d with a self-overlap at shift p, else len(w)."""
    c = overlap_coeffs(w, w, d, cross=False)
    for p in range(1, d + 1):
        if c[p]:
            return p
    return len(w)


def block_decomposition(w: Sequence[int], p: int) -> tuple[list[Word], Word]:
    """Split w into full blocks of length p and a shorter tail."""
    w = tuple(w)
    n = len(w) // p
    blocks = [w[i * p: (i + 1) * p] for i in range(n)]
    return blocks, w[n * p:]


def is_simple(B: Sequence[int]) -> bool:
    """True when B is not a proper power A^e (e > 1) of a shorter word."""
    B = tuple(B)
    if not B:
        raise ValueError("empty word")
    n = len(B)
    return not any(n % l == 0 and B[:l] * (n // l) == B for l in range(1, n))


def first_overlap(c: Sequence[int]) -> int | None:
    """Smallest positive shift carrying a 1, if any."""
    return next((i for i in range(1, len(c)) if c[i]), None)


@dataclass
class CorrelationSet:
    c11: tuple[int, ...]
    p11: IntPoly
    c22: tuple[int, ...] = ()
    c21: tuple[int, ...] = ()
    c12: tuple[int, ...] = ()
    p22: IntPoly = field(default_factory=lambda: IntPoly.const(0))
    p21: IntPoly = field(default_factory=lambda: IntPoly.const(0))
    p12: IntPoly = field(default_factory=lambda: IntPoly.const(0))
    i1: int | None = None
    i2: int | None = None
    period1: int = 0
    period2: int | None = None

    @property
    def two_word(self) -> bool:
        return bool(self.c22)


def correlation_set(basis) -> CorrelationSet:
    """All overlap data for the words of an :class:`InvariantBasis`."""
    w1, d1 = basis.w1, basis.d1
    c11 = overlap_coeffs(w1, w1, d1, cross=False)
    cs = CorrelationSet(c11=c11, p11=correlation_poly(c11), i1=first_overlap(c11),
                        period1=fundamental_period(w1, d1))
    if basis.w2 is None:
        return cs
    w2, d2 = basis.w2, basis.d2
    cs.c22 = overlap_coeffs(w2, w2, d2, cross=False)
    cs.c21 = overlap_coeffs(w2, w1, d1, cross=True)
    cs.c12 = overlap_coeffs(w1, w2, d2, cross=True)
    cs.p22 = correlation_poly(cs.c22)
    cs.p21 = correlation_poly(cs.c21)
    cs.p12 = correlation_poly(cs.c12)
    cs.i2 = first_overlap(cs.c22)
    cs.period2 = fundamental_period(w2, d2)
    return cs


def truncated_q(c: Sequence[int], i: int) -> IntPoly:
    """q^i = sum_{j <= i} c[j] t^(i-j): the top i+1 terms of p, shifted down."""
    return IntPoly([c[i - e] for e in range(i + 1)])


@dataclass
class FPolys:
    f11: IntPoly
    f21: IntPoly
    q11: dict[int, IntPoly] = field(default_factory=dict)
    q21: dict[int, IntPoly] = field(default_factory=dict)
    r11: dict[int, IntPoly] = field(default_factory=dict)
    r21: dict[int, IntPoly] = field(default_factory=dict)


def f_polys(basis, corr: CorrelationSet) -> FPolys:
    """f_* = sum over the retained exponents i of alpha_i * q^i_*."""
    zero = IntPoly.const(0)
    out = FPolys(zero, zero)
    d1 = basis.d1
    t = IntPoly.t()
    for i, a in sorted(basis.alphas.items()):
        q11 = truncated_q(corr.c11, i)
        q21 = truncated_q(corr.c21, i)  # c21[0] = 0, so q^0_21 = 0
        out.q11[i], out.q21[i] = q11, q21
        out.r11[i] = corr.p11 - q11 * t ** (d1 - i)
        out.r21[i] = corr.p21 - q21 * t ** (d1 - i)
        out.f11 = out.f11 + q11 * a
        out.f21 = out.f21 + q21 * a
    return out


def delta_poly(corr: CorrelationSet, f: FPolys | None = None) -> IntPoly:
    """Delta(t); p11 alone for one word."""
    if not corr.two_word:
        return corr.p11
    if f is None:
        raise ValueError("two-word Delta needs the f polynomials")
    return corr.p11 * (corr.p22 - f.f21) - corr.p21 * (corr.p12 - f.f11)
