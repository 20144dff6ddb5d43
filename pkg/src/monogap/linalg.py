"""Exact dense linear algebra over Fractions and over the ring Q[t].

Matrices are plain lists of lists. Determinants use Bareiss elimination,
which only ever divides exactly and so works unchanged for polynomial
entries; a cofactor expansion is kept for small orders.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Sequence

from .ratpoly import RatPoly, as_rat

Matrix = list[list]


def rat_matrix(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    return [[as_rat(x) for x in row] for row in rows]


def identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def is_square(A: Matrix) -> bool:
    return all(len(row) == len(A) for row in A)


def is_symmetric(A: Matrix) -> bool:
    n = len(A)
    return is_square(A) and all(A[i][j] == A[j][i] for i in range(n) for j in range(i))


def submatrix(A: Matrix, idx: Sequence[int]) -> Matrix:
    return [[A[i][j] for j in idx] for i in idx]


def leading_block(A: Matrix, k: int) -> Matrix:
    return [row[:k] for row in A[:k]]


def _zero_like(x):
    return RatPoly() if isinstance(x, RatPoly) else Fraction(0)


def _one_like(x):
    return RatPoly([1]) if isinstance(x, RatPoly) else Fraction(1)


def _exact_div(a, b):
    if isinstance(a, RatPoly) or isinstance(b, RatPoly):
        if not isinstance(a, RatPoly):
            a = RatPoly([a])
        if not isinstance(b, RatPoly):
            b = RatPoly([b])
        return a.exact_div(b)
    return a / b


def det_bareiss(A: Matrix):
    """Fraction-free determinant; entries may be Fractions or RatPolys."""
    n = len(A)
    if n == 0:
        return Fraction(1)
    M = [list(row) for row in A]
    sign = 1
    prev = _one_like(M[0][0])
    for k in range(n - 1):
        if not M[k][k]:
            for r in range(k + 1, n):
                if M[r][k]:
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return _zero_like(M[0][0])
        pivot = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = _exact_div(pivot * M[i][j] - M[i][k] * M[k][j], prev)
        prev = pivot
    d = M[n - 1][n - 1]
    return d if sign == 1 else -d


def det_cofactor(A: Matrix):
    """Laplace expansion along the first row; for small orders and as an oracle."""
    n = len(A)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return A[0][0]
    if n == 2:
        return A[0][0] * A[1][1] - A[0][1] * A[1][0]
    total = _zero_like(A[0][0])
    for j in range(n):
        if not A[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in A[1:]]
        term = A[0][j] * det_cofactor(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def det(A: Matrix):
    return det_cofactor(A) if len(A) <= 3 else det_bareiss(A)


def leading_minors(A: Matrix) -> list:
    return [det(leading_block(A, k)) for k in range(1, len(A) + 1)]


def principal_minors(A: Matrix, size: int | None = None):
    """Yield ``(index_tuple, determinant)`` for every principal minor, smallest first."""
    n = len(A)
    sizes = [size] if size is not None else range(1, n + 1)
    for k in sizes:
        for idx in combinations(range(n), k):
            yield idx, det(submatrix(A, idx))


def matrix_rank(A: Matrix) -> int:
    """Exact rank via integer (fraction-free) elimination."""
    if not A or not A[0]:
        return 0
    rows = []
    for row in A:
        den = lcm(*(as_rat(x).denominator for x in row))
        rows.append([int(as_rat(x) * den) for x in row])
    m, ncols = len(rows), len(rows[0])
    rank, prev = 0, 1
    for col in range(ncols):
        piv = next((r for r in range(rank, m) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][col]
        for r in range(rank + 1, m):
            for c in range(col + 1, ncols):
                rows[r][c] = (p * rows[r][c] - rows[r][col] * rows[rank][c]) // prev
            rows[r][col] = 0
        prev = p
        rank += 1
        if rank == m:
            break
    return rank


def charpoly(A: Matrix) -> RatPoly:
    """``det(t*I - A)`` as an exact polynomial."""
    n = len(A)
    tI_minus_A = [
        [RatPoly([-as_rat(A[i][j]), 1 if i == j else 0]) for j in range(n)] for i in range(n)
    ]
    return det_bareiss(tI_minus_A)


def matmul(A: Matrix, B: Matrix) -> Matrix:
    return [[sum((A[i][k] * B[k][j] for k in range(len(B))), Fraction(0))
             for j in range(len(B[0]))] for i in range(len(A))]


def transpose(A: Matrix) -> Matrix:
    return [list(col) for col in zip(*A)]


def quadratic_form(A: Matrix, c: Sequence) -> Fraction:
    n = len(A)
    return sum((c[i] * A[i][j] * c[j] for i in range(n) for j in range(n)), Fraction(0))


def solve(A: Matrix, b: Sequence) -> list[Fraction]:
    """Solve a nonsingular system exactly by Gauss-Jordan elimination."""
    n = len(A)
    M = [[as_rat(x) for x in row] + [as_rat(b[i])] for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [M[i][n] for i in range(n)]


def format_matrix(A: Matrix) -> list[list[str]]:
    return [[str(x) for x in row] for row in A]
