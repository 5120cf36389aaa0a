"""Exact dense linear algebra over the rationals.

Matrices are lists (or tuples) of rows. Every routine returns ``Fraction``
entries and never touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

Matrix = Sequence[Sequence[Fraction]]


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def bareiss_det(matrix: Matrix) -> Fraction:
    """Determinant by fraction-free (Bareiss) elimination.

    Each row is first scaled to integers by the lcm of its denominators, the
    integer determinant is computed with exact divisions only, and the row
    scalings are divided back out at the end.
    """
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    rows = []
    scale = 1
    for row in matrix:
        if len(row) != n:
            raise ValueError("matrix must be square")
        fr = [_as_fraction(x) for x in row]
        d = lcm(*(x.denominator for x in fr)) if fr else 1
        scale *= d
        rows.append([x.numerator * (d // x.denominator) for x in fr])

    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            for r in range(k + 1, n):
                if rows[r][k] != 0:
                    rows[k], rows[r] = rows[r], rows[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = rows[k][k]
        for i in range(k + 1, n):
            rik = rows[i][k]
            ri = rows[i]
            rk = rows[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pivot - rik * rk[j]) // prev
            ri[k] = 0
        prev = pivot
    return Fraction(sign * rows[n - 1][n - 1], scale)


def solve_exact(a: Matrix, b: Sequence[Fraction]) -> list[Fraction] | None:
    """Return one solution of ``a x = b`` or ``None`` if the system is inconsistent.

    The system may be over- or under-determined. Free variables are set to 0.
    """
    m = len(a)
    if m != len(b):
        raise ValueError("row count mismatch")
    ncols = len(a[0]) if m else 0
    aug = [[_as_fraction(x) for x in row] + [_as_fraction(rhs)] for row, rhs in zip(a, b)]

    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break

    if any(aug[i][ncols] != 0 for i in range(r, m)):
        return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = aug[i][ncols]
    return x


def matmul(a: Matrix, b: Matrix) -> list[list[Fraction]]:
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def matvec(a: Matrix, v: Sequence[Fraction]) -> list[Fraction]:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def inverse(a: Matrix) -> list[list[Fraction]]:
    """Gauss-Jordan inverse; raises ``ZeroDivisionError`` for singular input."""
    n = len(a)
    aug = [[_as_fraction(x) for x in row] + e for row, e in zip(a, identity(n))]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]
