"""Exact arithmetic and linear algebra over the prime field Z_p.

Everything in this package reduces to rank computations, inverses and
kernels of small integer matrices mod p; this module is that kernel.
Matrices are plain numpy integer arrays with entries in [0, p).
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np


class NotPrimeError(ValueError):
    pass


class NotInvertibleError(ValueError):
    pass


class SingularMatrixError(ValueError):
    pass


def is_prime(p: int) -> bool:
    """Deterministic trial division; fields here are desk-scale."""
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def ensure_prime(p: int) -> int:
    if not is_prime(p):
        raise NotPrimeError(f"p = {p} is not prime")
    return p


def field_inv(a: int, p: int) -> int:
    """Multiplicative inverse of a mod p."""
    a = int(a) % p
    if a == 0:
        raise NotInvertibleError("0 has no inverse")
    return pow(a, -1, p)


@lru_cache(maxsize=None)
def inverse_table(p: int) -> np.ndarray:
    """inverse_table(p)[a] = a^-1 mod p; entry 0 is a placeholder 0."""
    return np.array([0] + [pow(a, -1, p) for a in range(1, p)], dtype=np.int64)


def as_residues(mat, p: int) -> np.ndarray:
    return np.asarray(mat, dtype=np.int64) % p


def row_reduce(mat, p: int) -> tuple[np.ndarray, list[int]]:
    """Gauss-Jordan reduction mod p with first-nonzero pivoting.

    Returns the reduced matrix and the list of pivot columns; pivoting is
    deterministic so ranks and kernels are reproducible.
    """
    a = as_residues(mat, p).copy()
    if a.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = (a[r] * field_inv(int(a[r, c]), p)) % p
        for j in np.nonzero(a[:, c])[0]:
            if j != r:
                a[j] = (a[j] - a[j, c] * a[r]) % p
        pivots.append(c)
        r += 1
    return a, pivots


def mat_rank(mat, p: int) -> int:
    a = as_residues(mat, p)
    if a.size == 0:
        return 0
    return len(row_reduce(a, p)[1])


def mat_inverse(mat, p: int) -> np.ndarray:
    """Inverse of a square matrix mod p, or SingularMatrixError."""
    a = as_residues(mat, p)
    n = a.shape[0]
    if a.ndim != 2 or a.shape[1] != n:
        raise ValueError("matrix must be square")
    aug = np.hstack([a, np.eye(n, dtype=np.int64)])
    red, pivots = row_reduce(aug, p)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError(f"rank {mat_rank(a, p)} < {n}")
    return red[:, n:]


def kernel_basis(mat, p: int) -> np.ndarray:
    """Rows form a basis of the null space {v : mat @ v = 0 mod p}.

    Shape is (cols - rank, cols); an empty basis has zero rows.
    """
    a = as_residues(mat, p)
    if a.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    cols = a.shape[1]
    red, pivots = row_reduce(a, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for t, fcol in enumerate(free):
        basis[t, fcol] = 1
        for r, pcol in enumerate(pivots):
            basis[t, pcol] = (-red[r, fcol]) % p
    return basis


def rank_batch(mats: np.ndarray, p: int) -> np.ndarray:
    """Ranks mod p of a stack of matrices, shape (B, r, c) -> (B,).

    Vectorized Gauss-Jordan over the batch dimension; products of residues
    stay below 2^15 for p <= 31, so int16 intermediates are exact.
    """
    a = np.asarray(mats, dtype=np.int16) % p
    if a.ndim != 3:
        raise ValueError("expected a (B, r, c) stack")
    B, R, C = a.shape
    if B == 0 or R == 0 or C == 0:
        return np.zeros(B, dtype=np.int64)
    inv = inverse_table(p).astype(np.int16)
    piv_row = np.zeros(B, dtype=np.int64)
    rows_idx = np.arange(R)[None, :]
    for col in range(C):
        colvals = a[:, :, col]
        eligible = (rows_idx >= piv_row[:, None]) & (colvals != 0)
        has = eligible.any(axis=1)
        if not has.any():
            continue
        bidx = np.nonzero(has)[0]
        pr = piv_row[bidx]
        fr = eligible[bidx].argmax(axis=1)
        tmp = a[bidx, pr].copy()
        a[bidx, pr] = a[bidx, fr]
        a[bidx, fr] = tmp
        pivvals = a[bidx, pr, col]
        a[bidx, pr] = (a[bidx, pr] * inv[pivvals][:, None]) % p
        factors = a[bidx, :, col].copy()
        factors[np.arange(len(bidx)), pr] = 0
        a[bidx] = (a[bidx] - factors[:, :, None] * a[bidx, pr][:, None, :]) % p
        piv_row[bidx] += 1
        if (piv_row == R).all():
            break
    return piv_row


def pack_rows_gf2(mat) -> list[int]:
    """Pack a 0/1 matrix into one int bitmask per row (column j -> bit j)."""
    a = as_residues(mat, 2)
    if a.shape[1] > 63:
        raise ValueError("too many columns for bit packing")
    weights = (1 << np.arange(a.shape[1], dtype=np.int64))
    return [int(x) for x in a @ weights]


def rank_gf2(rows: list[int]) -> int:
    """Rank over GF(2) of bit-packed rows, by bitwise elimination."""
    rank = 0
    basis: list[int] = []
    for row in rows:
        for b in basis:
            row = min(row, row ^ b)
        if row:
            basis.append(row)
            rank += 1
    return rank
