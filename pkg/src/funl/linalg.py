"""Exact linear algebra over the rationals.

Matrices are lists of rows of :class:`fractions.Fraction`. Nothing here ever
rounds, so rank and span membership are decided exactly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Vector = list[Fraction]
Matrix = list[list[Fraction]]


def parse_rational(text: str | int) -> Fraction:
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str) or "." in text or "e" in text.lower():
        raise ValueError(f"not a rational of the form p/q: {text!r}")
    return Fraction(text.strip())


def format_rational(x: Fraction) -> str:
    """Canonical ``p/q`` form, with ``/q`` omitted when q == 1."""
    return str(Fraction(x))


def to_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> Matrix:
    return [[Fraction(0)] * c for _ in range(r)]


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def vec_mat(v: Sequence[Fraction], m: Sequence[Sequence[Fraction]]) -> Vector:
    """Row vector times matrix."""
    if not m:
        return []
    cols = len(m[0])
    out = [Fraction(0)] * cols
    for vi, row in zip(v, m):
        if vi:
            for j in range(cols):
                if row[j]:
                    out[j] += vi * row[j]
    return out


def mat_vec(m: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vector:
    return [dot(row, v) for row in m]


def mat_mul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Matrix:
    return [vec_mat(row, b) for row in a]


def transpose(m: Sequence[Sequence[Fraction]], ncols: int | None = None) -> Matrix:
    if not m:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*m)]


def rref(m: Sequence[Sequence[Fraction]]) -> tuple[Matrix, int, list[int]]:
    """Reduced row echelon form by Gauss-Jordan elimination.

    Returns ``(reduced, rank, pivot_columns)``. ``reduced`` has the same shape
    as ``m``; its first ``rank`` rows are nonzero with leading entry 1.
    """
    a = [[Fraction(x) for x in row] for row in m]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        lead = a[r][c]
        if lead != 1:
            a[r] = [x / lead for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, r, pivots


def rank(m: Sequence[Sequence[Fraction]]) -> int:
    return rref(m)[1]


class RowSpace:
    """Incrementally built span of vectors of a fixed length.

    Keeps an echelon basis together with, for every basis row, its expression
    as a combination of the vectors accepted by :meth:`add`, so that
    :meth:`coordinates` can express any member of the span in terms of the
    accepted vectors (which are linearly independent by construction).
    """

    def __init__(self, length: int):
        self.length = length
        self._rows: list[tuple[int, Vector, Vector]] = []  # (pivot, echelon row, combination)
        self.generators: list[Vector] = []

    def __len__(self) -> int:
        return len(self.generators)

    def _reduce(self, v: Sequence[Fraction]) -> tuple[Vector, Vector]:
        v = list(v)
        combo = [Fraction(0)] * len(self.generators)
        for pivot, row, rc in self._rows:
            f = v[pivot]
            if f:
                for j in range(pivot, self.length):
                    if row[j]:
                        v[j] -= f * row[j]
                for j, x in enumerate(rc):
                    if x:
                        combo[j] += f * x
        return v, combo

    def contains(self, v: Sequence[Fraction]) -> bool:
        residual, _ = self._reduce(v)
        return not any(residual)

    def add(self, v: Sequence[Fraction]) -> bool:
        """Add ``v`` as a generator if it is independent; report whether it was."""
        residual, combo = self._reduce(v)
        pivot = next((j for j, x in enumerate(residual) if x), None)
        if pivot is None:
            return False
        k = len(self.generators)
        self.generators.append(list(v))
        for _, _, rc in self._rows:
            rc.append(Fraction(0))
        # residual = v - sum(combo_j * gen_j)
        rc = [-x for x in combo] + [Fraction(1)]
        lead = residual[pivot]
        row = [x / lead for x in residual]
        rc = [x / lead for x in rc]
        self._rows.append((pivot, row, rc))
        self._rows.sort(key=lambda t: t[0])
        assert len(rc) == k + 1
        return True

    def coordinates(self, v: Sequence[Fraction]) -> Vector:
        """Coefficients c with ``v == sum(c[i] * generators[i])``; raises if ``v`` is outside the span."""
        residual, combo = self._reduce(v)
        if any(residual):
            raise ValueError("vector is not in the span")
        return combo
