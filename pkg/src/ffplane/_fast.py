"""Vectorised integer kernels shared by the counting modules."""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .ffield import legendre, tonelli_shanks


@lru_cache(maxsize=32)
def inverse_table(p: int) -> np.ndarray:
    """inv[a] = a^{-1} mod p, with inv[0] = 0."""
    inv = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv[a] = pow(a, p - 2, p)
    inv.setflags(write=False)
    return inv


def sqrt_minus_one(p: int) -> int | None:
    return tonelli_shanks(p - 1, p) if legendre(-1, p) == 1 else None


def canonical_line_keys(alpha, beta, gamma, p: int) -> np.ndarray:
    """Encode lines alpha*x + beta*y = gamma as integers after scaling the
    first nonzero of (alpha, beta) to 1. Inputs are reduced mod p."""
    alpha = np.asarray(alpha, dtype=np.int64) % p
    beta = np.asarray(beta, dtype=np.int64) % p
    gamma = np.asarray(gamma, dtype=np.int64) % p
    inv = inverse_table(p)
    scale = np.where(alpha != 0, inv[alpha], inv[beta])
    a = alpha * scale % p
    b = beta * scale % p
    g = gamma * scale % p
    return (a * p + b) * p + g


def decode_line_key(key: int, p: int) -> tuple[int, int, int]:
    key = int(key)
    return key // (p * p), (key // p) % p, key % p


def line_key(alpha: int, beta: int, gamma: int, p: int) -> int:
    return int(canonical_line_keys([alpha], [beta], [gamma], p)[0])


def lines_through_points(xy: np.ndarray, p: int) -> np.ndarray:
    """Keys of all p+1 lines through each point, shape (n, p+1)."""
    n = len(xy)
    if n == 0:
        return np.zeros((0, p + 1), dtype=np.int64)
    x = xy[:, 0:1].astype(np.int64)
    y = xy[:, 1:2].astype(np.int64)
    m = np.arange(p, dtype=np.int64)[None, :]
    # normals (1, m) for every slope plus the normal (0, 1)
    g = (x + m * y) % p
    keys_a = (1 * p + m) * p + g
    keys_b = (0 * p + 1) * p + (y % p)
    return np.concatenate([keys_a, keys_b], axis=1)


def line_incidences(xy: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Sorted keys of every line meeting the set and the point count on it."""
    keys = lines_through_points(xy, p).ravel()
    return np.unique(keys, return_counts=True)


def bisector_keys(xy: np.ndarray, p: int, rows=None) -> tuple[np.ndarray, np.ndarray]:
    """Bisector keys and isotropy flags for all ordered pairs (b, c), b != c.

    ``rows`` restricts the first point to a slice of indices.
    """
    n = len(xy)
    x = xy[:, 0].astype(np.int64)
    y = xy[:, 1].astype(np.int64)
    ri = np.arange(n) if rows is None else np.asarray(rows)
    bx, by = x[ri][:, None], y[ri][:, None]
    alpha = 2 * (bx - x[None, :])
    beta = 2 * (by - y[None, :])
    gamma = bx * bx + by * by - (x * x + y * y)[None, :]
    offdiag = ri[:, None] != np.arange(n)[None, :]
    alpha, beta, gamma = alpha[offdiag], beta[offdiag], gamma[offdiag]
    iso = (alpha * alpha + beta * beta) % p == 0
    return canonical_line_keys(alpha, beta, gamma, p), iso


def pair_distances(xy: np.ndarray, p: int, rows) -> np.ndarray:
    """d(a, b) mod p for a in ``rows`` and every b, shape (len(rows), n)."""
    x = xy[:, 0].astype(np.int64)
    y = xy[:, 1].astype(np.int64)
    dx = x[rows][:, None] - x[None, :]
    dy = y[rows][:, None] - y[None, :]
    return (dx * dx + dy * dy) % p


def row_chunks(n: int, width: int, budget: int = 4_000_000):
    step = max(1, budget // max(1, width))
    for start in range(0, n, step):
        yield np.arange(start, min(n, start + step))


def circle_count_matrix(xy: np.ndarray, p: int) -> np.ndarray:
    """counts[c, r] = |A on circle(centre c, r)| for every centre c = cx*p + cy."""
    n = len(xy)
    counts = np.zeros((p * p, p), dtype=np.int64)
    if n == 0:
        return counts
    x = xy[:, 0].astype(np.int64)
    y = xy[:, 1].astype(np.int64)
    centres = np.arange(p * p, dtype=np.int64)
    for chunk in row_chunks(p * p, n):
        cx, cy = (centres[chunk] // p)[:, None], (centres[chunk] % p)[:, None]
        d = ((cx - x[None, :]) ** 2 + (cy - y[None, :]) ** 2) % p
        flat = (np.arange(len(chunk))[:, None] * p + d).ravel()
        counts[chunk] = np.bincount(flat, minlength=len(chunk) * p).reshape(len(chunk), p)
    return counts
