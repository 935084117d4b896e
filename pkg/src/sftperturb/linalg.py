"""Exact row reduction over the rationals with provenance tracking."""
from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Sequence


class Echelon:
    """Incrementally built row-echelon basis of a span of rational vectors.

    Each stored row remembers which combination of the *added* vectors it
    came from, so membership tests also return the coefficients of the
    relation.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: list[tuple[int, list[Fraction], dict[Hashable, Fraction]]] = []
        self.labels: list[Hashable] = []

    def __len__(self) -> int:
        return len(self.rows)

    def _reduce(self, vec: Sequence) -> tuple[list[Fraction], dict[Hashable, Fraction]]:
        v = [Fraction(x) for x in vec]
        if len(v) != self.dim:
            raise ValueError(f"expected vector of length {self.dim}")
        combo: dict[Hashable, Fraction] = {}
        for piv, row, rcombo in self.rows:
            c = v[piv]
            if c:
                for j in range(piv, self.dim):
                    if row[j]:
                        v[j] -= c * row[j]
                for lab, x in rcombo.items():
                    combo[lab] = combo.get(lab, 0) + c * x
        return v, combo

    def add(self, vec: Sequence, label: Hashable) -> bool:
        """Add a vector; returns False (and stores nothing) if it is dependent."""
        v, combo = self._reduce(vec)
        piv = next((j for j, x in enumerate(v) if x), None)
        if piv is None:
            return False
        c = v[piv]
        v = [x / c for x in v]
        # residual = vec - sum(combo) ; normalised row = residual / c
        rcombo = {lab: -x / c for lab, x in combo.items() if x}
        rcombo[label] = rcombo.get(label, 0) + 1 / c
        # keep the basis fully reduced so later reductions are order independent
        for i, (p2, row2, combo2) in enumerate(self.rows):
            f = row2[piv]
            if f:
                row2 = [a - f * b for a, b in zip(row2, v)]
                combo2 = dict(combo2)
                for lab, x in rcombo.items():
                    combo2[lab] = combo2.get(lab, 0) - f * x
                self.rows[i] = (p2, row2, {l: x for l, x in combo2.items() if x})
        self.rows.append((piv, v, rcombo))
        self.rows.sort(key=lambda item: item[0])
        self.labels.append(label)
        return True

    def express(self, vec: Sequence) -> dict[Hashable, Fraction] | None:
        """Coefficients writing ``vec`` in terms of the added vectors, or None."""
        v, combo = self._reduce(vec)
        if any(v):
            return None
        return {lab: x for lab, x in combo.items() if x}

    def contains(self, vec: Sequence) -> bool:
        return self.express(vec) is not None


def rank(vectors: Sequence[Sequence]) -> int:
    if not vectors:
        return 0
    e = Echelon(len(vectors[0]))
    for i, v in enumerate(vectors):
        e.add(v, i)
    return len(e)


PRIME = (1 << 61) - 1
# Largest n for which every n x n 0/1 minor is below PRIME in absolute value
# (Hadamard: |det| <= (n+1)^((n+1)/2) / 2^n).  Rank and membership questions
# about at most this many 0/1 vectors give the rational answers mod PRIME.
EXACT_MOD_VECTORS = 36


class ModEchelon:
    """Same interface as :class:`Echelon`, with arithmetic mod a 61-bit prime.

    Relations returned by :meth:`express` are lifted to the symmetric range
    and re-checked in exact integer arithmetic; when the lift is not an exact
    integer relation the rational answer is computed instead.
    """

    def __init__(self, dim: int, p: int = PRIME):
        self.dim, self.p = dim, p
        self.rows: list[tuple[int, list[int], dict[Hashable, int]]] = []
        self.labels: list[Hashable] = []
        self.originals: dict[Hashable, list[int]] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def _reduce(self, vec: Sequence[int]) -> tuple[list[int], dict[Hashable, int]]:
        p = self.p
        v = [x % p for x in vec]
        if len(v) != self.dim:
            raise ValueError(f"expected vector of length {self.dim}")
        combo: dict[Hashable, int] = {}
        for piv, row, rcombo in self.rows:
            c = v[piv]
            if c:
                for j in range(piv, self.dim):
                    if row[j]:
                        v[j] = (v[j] - c * row[j]) % p
                for lab, x in rcombo.items():
                    combo[lab] = (combo.get(lab, 0) + c * x) % p
        return v, combo

    def add(self, vec: Sequence[int], label: Hashable) -> bool:
        p = self.p
        v, combo = self._reduce(vec)
        piv = next((j for j, x in enumerate(v) if x), None)
        if piv is None:
            return False
        inv = pow(v[piv], -1, p)
        v = [x * inv % p for x in v]
        rcombo = {lab: -x * inv % p for lab, x in combo.items() if x}
        rcombo[label] = (rcombo.get(label, 0) + inv) % p
        for i, (p2, row2, combo2) in enumerate(self.rows):
            f = row2[piv]
            if f:
                row2 = [(a - f * b) % p for a, b in zip(row2, v)]
                combo2 = dict(combo2)
                for lab, x in rcombo.items():
                    combo2[lab] = (combo2.get(lab, 0) - f * x) % p
                self.rows[i] = (p2, row2, {l: x for l, x in combo2.items() if x})
        self.rows.append((piv, v, rcombo))
        self.rows.sort(key=lambda item: item[0])
        self.labels.append(label)
        self.originals[label] = list(vec)
        return True

    def _lift(self, x: int) -> int:
        return x - self.p if x > self.p // 2 else x

    def express(self, vec: Sequence[int]) -> dict[Hashable, Fraction] | None:
        v, combo = self._reduce(vec)
        if any(v):
            return None
        lifted = {lab: self._lift(x) for lab, x in combo.items() if x}
        recon = [0] * self.dim
        for lab, c in lifted.items():
            for j, x in enumerate(self.originals[lab]):
                if x:
                    recon[j] += c * x
        if recon == list(vec):
            return {lab: Fraction(c) for lab, c in lifted.items()}
        exact = Echelon(self.dim)
        for lab in self.labels:
            exact.add(self.originals[lab], lab)
        return exact.express(vec)

    def contains(self, vec: Sequence[int]) -> bool:
        return self._reduce(vec)[0] == [0] * self.dim


def echelon_for(dim: int, max_vectors: int | None = None):
    """Modular elimination where it is provably exact for 0/1 input, rationals otherwise.

    ``max_vectors`` bounds how many vectors will be added (default: ``dim``);
    a membership test involves one more.
    """
    n = dim if max_vectors is None else max_vectors
    return ModEchelon(dim) if n + 1 <= EXACT_MOD_VECTORS else Echelon(dim)
