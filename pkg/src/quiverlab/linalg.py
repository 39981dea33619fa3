"""Rank over the rationals and numerically."""
from __future__ import annotations

from fractions import Fraction

import numpy as np


def exact_rank(rows) -> int:
    """Rank of a matrix of rationals by Gaussian elimination."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        prow = m[rank]
        inv = 1 / prow[col]
        for r in range(rank + 1, nrows):
            f = m[r][col]
            if f:
                f *= inv
                row = m[r]
                for c in range(col, ncols):
                    if prow[c]:
                        row[c] -= f * prow[c]
        rank += 1
        if rank == nrows:
            break
    return rank


def numeric_rank(a, tol: float = 1e-8) -> int:
    """Number of singular values above ``tol * max(1, largest)``."""
    a = np.asarray(a, dtype=complex)
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    return int(np.sum(s > tol * max(1.0, s[0])))
