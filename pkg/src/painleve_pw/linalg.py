"""Exact linear algebra over the rationals on small dense matrices."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list  # list[list[Fraction]]


def to_fraction_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def row_echelon(rows: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    m = to_fraction_matrix(rows)
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(row_echelon(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel {v : M v = 0}."""
    if not rows:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    ncols = len(rows[0])
    red, pivots = row_echelon(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(v)
    return basis


def primitive_integer_vector(v: Sequence[Fraction]) -> list[int]:
    """Scale to a primitive integer vector whose first nonzero entry is positive."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return ints
    ints = [x // g for x in ints]
    first = next(x for x in ints if x)
    if first < 0:
        ints = [-x for x in ints]
    return ints


def congruence_diagonalize(sym: Sequence[Sequence]) -> tuple[list[Fraction], bool]:
    """Diagonal of a symmetric congruence form, and whether it succeeded cleanly.

    Symmetric Gaussian elimination using only diagonal pivots.  It returns
    ``(diagonal, True)`` when every remaining block can be cleared that way,
    which always happens for semidefinite matrices.  When a zero diagonal
    entry has a nonzero off-diagonal entry in its row the form is
    indefinite, and the partial diagonal is returned with ``False``.
    """
    a = to_fraction_matrix(sym)
    n = len(a)
    for i in range(n):
        for j in range(n):
            if a[i][j] != a[j][i]:
                raise ValueError("matrix is not symmetric")
    remaining = list(range(n))
    diag: list[Fraction] = []
    while remaining:
        piv = next((i for i in remaining if a[i][i]), None)
        if piv is None:
            if any(a[i][j] for i in remaining for j in remaining):
                return diag, False
            diag.extend(Fraction(0) for _ in remaining)
            break
        d = a[piv][piv]
        diag.append(d)
        remaining.remove(piv)
        row = {j: a[piv][j] for j in remaining}
        for i in remaining:
            if row[i]:
                f = row[i] / d
                for j in remaining:
                    a[i][j] -= f * row[j]
    return diag, True
