"""Exact linear algebra over Z and Q on plain nested lists."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def smith_diagonal(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal of the Smith normal form, ``d1 | d2 | ...``, all positive."""
    A = [list(map(int, row)) for row in matrix]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    diag: list[int] = []
    t = 0
    while t < min(rows, cols):
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if A[i][j] and (pivot is None or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]

        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if A[i][t]:
                    q = A[i][t] // p
                    Ai, At = A[i], A[t]
                    for j in range(t, cols):
                        Ai[j] -= q * At[j]
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if A[t][j]:
                    q = A[t][j] // p
                    for i in range(t, rows):
                        A[i][j] -= q * A[i][t]
                    if A[t][j]:
                        dirty = True
            if not dirty:
                # divisibility: fold any offending row into row t and retry
                bad = next(
                    (i for i in range(t + 1, rows) for j in range(t + 1, cols) if A[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                At, Ab = A[t], A[bad]
                for j in range(t, cols):
                    At[j] += Ab[j]
                dirty = True
            if dirty:
                # move the smallest nonzero entry of row/column t to the pivot
                best = (t, t)
                for i in range(t, rows):
                    if A[i][t] and abs(A[i][t]) < abs(A[best[0]][best[1]]):
                        best = (i, t)
                for j in range(t, cols):
                    if A[t][j] and abs(A[t][j]) < abs(A[best[0]][best[1]]):
                        best = (t, j)
                bi, bj = best
                A[t], A[bi] = A[bi], A[t]
                for row in A:
                    row[t], row[bj] = row[bj], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    return diag


def bareiss_det(matrix, one, zero, exact_div=None):
    """Fraction-free determinant; entries need ``+ - *`` and exact division.

    ``exact_div(a, b)`` defaults to ``a / b``.
    """
    div = exact_div or (lambda a, b: a / b)
    M = [list(row) for row in matrix]
    n = len(M)
    if n == 0:
        return one
    sign = 1
    prev = one
    for k in range(n - 1):
        if M[k][k] == zero:
            swap = next((i for i in range(k + 1, n) if M[i][k] != zero), None)
            if swap is None:
                return zero
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        pk = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = div(M[i][j] * pk - M[i][k] * M[k][j], prev)
        prev = pk
    det = M[n - 1][n - 1]
    return det if sign == 1 else -det


def solve_rational(A: Sequence[Sequence[int]], b: Sequence[int]) -> list[Fraction] | None:
    """Unique solution of the square system ``A x = b`` over Q, or None if singular."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(rhs)] for row, rhs in zip(A, b)]
    for k in range(n):
        piv = next((i for i in range(k, n) if M[i][k] != 0), None)
        if piv is None:
            return None
        M[k], M[piv] = M[piv], M[k]
        inv = 1 / M[k][k]
        Mk = [x * inv for x in M[k]]
        M[k] = Mk
        for i in range(n):
            if i != k and M[i][k] != 0:
                f = M[i][k]
                Mi = M[i]
                M[i] = [x - f * y for x, y in zip(Mi, Mk)]
    return [M[i][n] for i in range(n)]
