"""Exact linear algebra over Q(z)."""
from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from .algebra import ONE, ZERO, RatFuncZ
from . import kernels as K

__all__ = ["solve_linear", "rank_fraction_free", "clear_denominators"]


def solve_linear(rows: Sequence[Sequence[RatFuncZ]], rhs: Sequence[RatFuncZ],
                 ncols: int) -> Optional[Tuple[List[RatFuncZ], int]]:
    """Solve rows * x = rhs over Q(z).

    Returns (x, nullity) with free variables set to zero, or None when the
    system is inconsistent.
    """
    A = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = A[r][c].inverse()
        A[r] = [v * inv if v else v for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b if b else a for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    for i in range(r, len(A)):
        if A[i][ncols]:
            return None
    x = [ZERO] * ncols
    for i, c in enumerate(pivots):
        x[c] = A[i][ncols]
    return x, ncols - len(pivots)


def clear_denominators(row: Sequence[RatFuncZ]) -> List[RatFuncZ]:
    """Scale a row by the lcm of its denominators so every entry is a polynomial."""
    den = (1,)
    for v in row:
        if v and v.d != (1,):
            g = K.pgcd(den, v.d)
            den = K.pmul(den, K.pdivexact(v.d, g))
    if den == (1,):
        return list(row)
    s = RatFuncZ._raw(ONE.c, den, (1,))
    return [v * s for v in row]


def rank_fraction_free(matrix: Sequence[Sequence[RatFuncZ]]) -> int:
    """Rank over Q(z) by Bareiss elimination on polynomial entries."""
    M = [clear_denominators(r) for r in matrix if any(r)]
    if not M:
        return 0
    ncols = len(M[0])
    rank = 0
    prev = ONE
    col = 0
    while rank < len(M) and col < ncols:
        p = next((i for i in range(rank, len(M)) if M[i][col]), None)
        if p is None:
            col += 1
            continue
        M[rank], M[p] = M[p], M[rank]
        piv = M[rank][col]
        for i in range(rank + 1, len(M)):
            a = M[i][col]
            new = []
            for j in range(ncols):
                v = piv * M[i][j] - a * M[rank][j]
                new.append(v / prev if v else v)
            M[i] = new
        prev = piv
        rank += 1
        col += 1
    return rank
