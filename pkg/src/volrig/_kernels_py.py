"""Pure-Python modular elimination kernels.

Reference implementation of the hot loops; ``volrig._kernels`` is a compiled
drop-in with the same signatures. All entries are assumed reduced into
``[0, q)`` and ``q`` is assumed prime.
"""

from __future__ import annotations


def _echelon(a: list[list[int]], ncols: int, q: int) -> list[int]:
    # in-place row echelon form; returns pivot columns in increasing order
    m = len(a)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        p = r
        while p < m and a[p][c] == 0:
            p += 1
        if p == m:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
        row = a[r]
        inv = pow(row[c], q - 2, q)
        for i in range(r + 1, m):
            other = a[i]
            f = other[c]
            if f:
                f = f * inv % q
                a[i] = [(x - f * y) % q for x, y in zip(other, row)]
        pivots.append(c)
        r += 1
    return pivots


def pivot_columns(rows, ncols: int, q: int) -> list[int]:
    """Indices of the pivot columns of ``rows`` over GF(q).

    Scanning columns left to right, a column is a pivot exactly when it is not
    in the span of the columns before it, so the result is the greedy
    (order-minimal) column basis.
    """
    a = [list(r) for r in rows]
    return _echelon(a, ncols, q)


def rank(rows, ncols: int, q: int) -> int:
    a = [list(r) for r in rows]
    return len(_echelon(a, ncols, q))


def det(rows, q: int) -> int:
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    acc = 1
    for c in range(n):
        p = c
        while p < n and a[p][c] == 0:
            p += 1
        if p == n:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            sign = -sign
        row = a[c]
        piv = row[c]
        acc = acc * piv % q
        inv = pow(piv, q - 2, q)
        for i in range(c + 1, n):
            f = a[i][c]
            if f:
                f = f * inv % q
                a[i] = [(x - f * y) % q for x, y in zip(a[i], row)]
    return acc if sign == 1 else (-acc) % q


def minors(matrix, row_sets, col_sets, q: int) -> list[list[int]]:
    """Matrix of minors ``det(matrix[R][C])`` for R in row_sets, C in col_sets."""
    out = []
    for rs in row_sets:
        sub_rows = [matrix[i] for i in rs]
        out.append([det([[r[j] for j in cs] for r in sub_rows], q) for cs in col_sets])
    return out
