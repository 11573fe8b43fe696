"""Exact rational linear algebra on nested tuples of ``Fraction``.

Matrices are plain row sequences.  Rank and null space use fraction-free
(Bareiss) elimination on an integer matrix obtained by clearing
denominators row by row, so intermediate entries stay integral and no
gcd work happens until the very end.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

import numpy as np

Matrix = tuple[tuple[Fraction, ...], ...]


def to_fraction_matrix(rows) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def zeros(n_rows: int, n_cols: int) -> Matrix:
    return tuple((Fraction(0),) * n_cols for _ in range(n_rows))


def identity(n: int) -> Matrix:
    return tuple(
        tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)
    )


def transpose(a: Sequence[Sequence[Fraction]]) -> Matrix:
    if not a:
        return ()
    return tuple(zip(*a))


def matmul(a, b) -> Matrix:
    bt = transpose(b)
    return tuple(
        tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt)
        for row in a
    )


def scale(a, factor) -> Matrix:
    factor = Fraction(factor)
    return tuple(tuple(factor * x for x in row) for row in a)


def is_zero(a) -> bool:
    return all(x == 0 for row in a for x in row)


def canonical_symplectic(k: int) -> Matrix:
    """Block-diagonal matrix of ``k`` blocks ``[[0, 1], [-1, 0]]``."""
    j = [[Fraction(0)] * (2 * k) for _ in range(2 * k)]
    for b in range(k):
        j[2 * b][2 * b + 1] = Fraction(1)
        j[2 * b + 1][2 * b] = Fraction(-1)
    return tuple(tuple(row) for row in j)


def _integer_rows(a) -> list[list[int]]:
    out = []
    for row in a:
        fr = [Fraction(x) for x in row]
        den = lcm(*(x.denominator for x in fr)) if fr else 1
        out.append([int(x * den) for x in fr])
    return out


def bareiss_echelon(a) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form.

    Returns the integer echelon matrix and the list of pivot columns.  Rows
    are scaled by positive integers before elimination, which changes
    neither the row space nor the pivot structure.
    """
    m = _integer_rows(a)
    n_rows = len(m)
    n_cols = len(m[0]) if m else 0
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        piv = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, n_rows):
            mic = m[i][c]
            row_i = m[i]
            row_r = m[r]
            for j in range(c, n_cols):
                num = p * row_i[j] - mic * row_r[j]
                q, rem = divmod(num, prev)
                if rem:
                    raise ArithmeticError("non-exact Bareiss division")
                row_i[j] = q
            for j in range(c):
                row_i[j] = 0
        prev = p
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a) -> int:
    return len(bareiss_echelon(a)[1])


def pivot_columns(a) -> list[int]:
    """Indices of the leftmost maximal set of linearly independent columns."""
    return bareiss_echelon(a)[1]


def nullspace(a) -> list[tuple[Fraction, ...]]:
    """Basis of ``{x : a x = 0}``, one primitive integer vector per free column."""
    m, pivots = bareiss_echelon(a)
    n_cols = len(a[0]) if a else 0
    free = [c for c in range(n_cols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * n_cols
        x[f] = Fraction(1)
        for r in reversed(range(len(pivots))):
            c = pivots[r]
            s = sum(
                (m[r][j] * x[j] for j in range(c + 1, n_cols)), Fraction(0)
            )
            x[c] = -s / m[r][c]
        den = lcm(*(v.denominator for v in x))
        ints = [int(v * den) for v in x]
        g = 0
        for v in ints:
            g = gcd(g, v)
        basis.append(tuple(Fraction(v, g) for v in ints))
    return basis


def inverse(a) -> Matrix:
    """Gauss-Jordan inverse over the rationals."""
    n = len(a)
    aug = [
        [Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
        for i, row in enumerate(a)
    ]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        p = aug[c][c]
        aug[c] = [x / p for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return tuple(tuple(row[n:]) for row in aug)


def as_float(a) -> np.ndarray:
    return np.array([[float(x) for x in row] for row in a], dtype=float)
