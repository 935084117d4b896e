"""Exact integer polynomials in one variable ``t``.

Coefficients are Python ints (arbitrary precision), stored lowest degree
first with trailing zeros trimmed, so the zero polynomial has no
coefficients at all.  Real roots are isolated with Sturm sequences on the
square-free part and refined by bisection over dyadic rationals, so every
reported root comes with a certified error radius.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


class IntPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[int, ...] = tuple(c)

    @classmethod
    def const(cls, c: int) -> "IntPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, c: int = 1) -> "IntPoly":
        return cls([0] * degree + [c])

    @classmethod
    def t(cls) -> "IntPoly":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPoly.const(other)
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        return format_poly(self)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    # ring operations -------------------------------------------------
    @staticmethod
    def _coerce(x) -> "IntPoly":
        if isinstance(x, IntPoly):
            return x
        if isinstance(x, int):
            return IntPoly.const(x)
        raise TypeError(f"cannot combine IntPoly with {type(x).__name__}")

    def __add__(self, other) -> "IntPoly":
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return IntPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "IntPoly":
        return IntPoly(-x for x in self.coeffs)

    def __sub__(self, other) -> "IntPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "IntPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly(other * x for x in self.coeffs)
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "IntPoly":
        if n < 0:
            raise ValueError("negative power")
        out, base = IntPoly.const(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, n: int) -> "IntPoly":
        """Multiply by ``t**n``."""
        if not self.coeffs:
            return self
        return IntPoly([0] * n + list(self.coeffs))

    def __call__(self, x):
        return poly_eval(self, x)

    def derivative(self) -> "IntPoly":
        return IntPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive(self) -> "IntPoly":
        """Divide out the content and make the leading coefficient positive."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.lead < 0:
            g = -g
        return IntPoly(c // g for c in self.coeffs)

    def normalized(self) -> "IntPoly":
        """Multiply by -1 if needed so the leading coefficient is positive."""
        return -self if self.lead < 0 else self

    def divexact(self, other: "IntPoly") -> "IntPoly":
        """Quotient in Z[t]; raises ArithmeticError unless ``other`` divides exactly."""
        q, r = self.divmod_int(other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def divmod_int(self, other: "IntPoly") -> tuple["IntPoly", "IntPoly"]:
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db, lb = other.degree, other.lead
        if len(rem) - 1 < db:
            return IntPoly(), self
        quot = [0] * (len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            q, m = divmod(c, lb)
            if m:
                raise ArithmeticError(f"{other} does not divide {self} over the integers")
            quot[i - db] = q
            for j, y in enumerate(other.coeffs):
                rem[i - db + j] -= q * y
        return IntPoly(quot), IntPoly(rem)


def poly_arith(op: str, p: IntPoly, q: IntPoly) -> IntPoly:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def poly_eval(p: IntPoly, x):
    """Horner evaluation; exact for int and Fraction arguments."""
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def format_poly(p: IntPoly, var: str = "t") -> str:
    if not p.coeffs:
        return "0"
    parts = []
    for deg in range(p.degree, -1, -1):
        c = p.coeffs[deg]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if deg == 0:
            body = str(a)
        else:
            mono = var if deg == 1 else f"{var}^{deg}"
            body = mono if a == 1 else f"{a}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# gcd, square-free part and Sturm sequences

def _prem_signed(a: IntPoly, b: IntPoly) -> IntPoly:
    """Remainder of a by b scaled by a *positive* integer (keeps Sturm signs)."""
    rem = list(a.coeffs)
    db, lb = b.degree, b.lead
    while len(rem) - 1 >= db and rem:
        c = rem[-1]
        # rem <- |lb|*rem - sign(lb)*c*t^k*b
        k = len(rem) - 1 - db
        mult = abs(lb)
        fac = c if lb > 0 else -c
        rem = [x * mult for x in rem]
        for j, y in enumerate(b.coeffs):
            rem[k + j] -= fac * y
        rem.pop()
        while rem and rem[-1] == 0:
            rem.pop()
    return IntPoly(rem)


def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Primitive gcd with positive leading coefficient."""
    a, b = a.primitive(), b.primitive()
    if not a:
        return b
    while b:
        r = _prem_signed(a, b)
        a, b = b, r.primitive()
    return a.primitive()


def squarefree_part(p: IntPoly) -> IntPoly:
    if p.degree <= 0:
        return p.primitive()
    g = poly_gcd(p, p.derivative())
    if g.degree == 0:
        return p.primitive()
    # exact quotient over Q, then clear denominators
    q = _div_rational(p.primitive(), g)
    return q.primitive()


def _div_rational(a: IntPoly, b: IntPoly) -> IntPoly:
    rem = [Fraction(x) for x in a.coeffs]
    db, lb = b.degree, b.lead
    quot = [Fraction(0)] * (len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i] / lb
        quot[i - db] = c
        for j, y in enumerate(b.coeffs):
            rem[i - db + j] -= c * y
    if any(rem):
        raise ArithmeticError("inexact rational division")
    den = 1
    for q in quot:
        den = den * q.denominator // gcd(den, q.denominator)
    return IntPoly(int(q * den) for q in quot)


def sturm_sequence(p: IntPoly) -> list[IntPoly]:
    """Sturm chain of p (p should be square-free for root counting)."""
    if p.degree < 1:
        return [p]
    seq = [p, p.derivative()]
    while True:
        r = _prem_signed(seq[-2], seq[-1])
        if not r:
            break
        g = r.content()
        seq.append(IntPoly(-c // g for c in r.coeffs))
    return seq


def _sign_at(coeffs: Sequence[int], num: int, den: int) -> int:
    """Sign of p(num/den) for den > 0, via homogenised Horner in integers."""
    if not coeffs:
        return 0
    acc = coeffs[-1]
    dp = 1
    for c in reversed(coeffs[:-1]):
        dp *= den
        acc = acc * num + c * dp
    return (acc > 0) - (acc < 0)


def _variations(seq: Sequence[IntPoly], x: Fraction | None, at_inf: int = 0) -> int:
    signs = []
    for q in seq:
        if at_inf:
            s = (1 if q.lead > 0 else -1) if q else 0
            if at_inf < 0 and q.degree % 2 == 1:
                s = -s
        else:
            s = _sign_at(q.coeffs, x.numerator, x.denominator)
        if s:
            signs.append(s)
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def count_real_roots(p: IntPoly, lo=None, hi=None) -> int:
    """Number of distinct real roots of p in the half-open interval (lo, hi].

    ``None`` stands for -inf / +inf respectively.
    """
    if not p:
        raise ValueError("zero polynomial has infinitely many roots")
    q = squarefree_part(p)
    seq = sturm_sequence(q)
    return _count(seq, lo, hi)


def _count(seq, lo, hi) -> int:
    vlo = _variations(seq, None, -1) if lo is None else _variations(seq, Fraction(lo))
    vhi = _variations(seq, None, +1) if hi is None else _variations(seq, Fraction(hi))
    return vlo - vhi


def cauchy_bound(p: IntPoly) -> int:
    """Integer strictly above the modulus of every complex root of p."""
    lead = abs(p.lead)
    m = max((abs(c) for c in p.coeffs[:-1]), default=0)
    return 1 + -(-m // lead) + 1


class NoRealRootError(ValueError):
    """The polynomial has no real root at or above the requested bound."""


@dataclass(frozen=True)
class RootEstimate:
    value: float
    radius: float
    lo: Fraction
    hi: Fraction

    def __float__(self) -> float:
        return self.value


def largest_real_root(p: IntPoly, lower_bound=None, tol: float = 1e-12) -> RootEstimate:
    """Largest real root of p that is >= lower_bound, to within ``tol``.

    The root lies in [lo, hi] of the returned estimate, whose midpoint is
    ``value`` and half-width ``radius <= tol``.
    """
    if not isinstance(p, IntPoly):
        raise TypeError("expected an IntPoly")
    if not p:
        raise ValueError("zero polynomial: every number is a root")
    q = squarefree_part(p)
    if q.degree < 1:
        raise NoRealRootError(f"{p} has no real roots")
    seq = sturm_sequence(q)
    hi = Fraction(cauchy_bound(q))
    lo = -hi if lower_bound is None else Fraction(lower_bound)
    if lo >= hi:
        raise NoRealRootError(f"no real root of {p} at or above {lower_bound}")
    n = _count(seq, lo, hi)
    if n == 0:
        if _sign_at(q.coeffs, lo.numerator, lo.denominator) == 0:
            return RootEstimate(float(lo), 0.0, lo, lo)
        raise NoRealRootError(f"no real root of {p} at or above {lower_bound}")
    # isolate the largest root alone in (lo, hi]
    while n > 1:
        mid = (lo + hi) / 2
        m = _count(seq, mid, hi)
        if m >= 1:
            lo, n = mid, m
        else:
            hi = mid
    if _sign_at(q.coeffs, hi.numerator, hi.denominator) == 0:
        return RootEstimate(float(hi), 0.0, hi, hi)
    s_hi = _sign_at(q.coeffs, hi.numerator, hi.denominator)
    width = Fraction(tol) * 2
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = _sign_at(q.coeffs, mid.numerator, mid.denominator)
        if s == 0:
            return RootEstimate(float(mid), 0.0, mid, mid)
        if s == s_hi:
            hi = mid
        else:
            lo = mid
    # rational roots of monic polynomials are integers; report those exactly
    c = Fraction(round((lo + hi) / 2))
    if lo <= c <= hi and _sign_at(q.coeffs, c.numerator, 1) == 0:
        return RootEstimate(float(c), 0.0, c, c)
    mid = (lo + hi) / 2
    return RootEstimate(float(mid), float((hi - lo) / 2), lo, hi)


# ---------------------------------------------------------------------------
# determinants of polynomial matrices

def poly_det(rows: Sequence[Sequence]) -> IntPoly:
    """Determinant of a square matrix with IntPoly (or int) entries.

    Fraction-free Bareiss elimination with row pivoting; every division is
    exact in Z[t].
    """
    n = len(rows)
    if n == 0:
        return IntPoly.const(1)
    a = [[IntPoly._coerce(x) for x in row] for row in rows]
    if any(len(row) != n for row in a):
        raise ValueError("matrix is not square")
    sign = 1
    prev = IntPoly.const(1)
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return IntPoly()
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                num = piv * row_i[j] - aik * row_k[j]
                row_i[j] = num.divexact(prev)
            row_i[k] = IntPoly()
        prev = piv
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det
