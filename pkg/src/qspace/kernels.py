"""Permanent and determinant of small square matrices.

Both public functions dispatch to a numba kernel or a numpy kernel, see
:mod:`qspace._jit`.  The two paths are kept independent so that each can be
checked against the other.

- permanent: Ryser inclusion-exclusion. The numba kernel walks subsets in
  Gray-code order (one column update per step, O(2^n n)); the numpy kernel
  enumerates all subsets as a dense 0/1 table.
- determinant: signed permutation sum for n <= 7, Bareiss fraction-free
  elimination above.
"""

from __future__ import annotations

from functools import cache
from itertools import permutations

import numpy as np

from . import _jit

__all__ = [
    "permanent",
    "determinant",
    "permanent_numba",
    "permanent_numpy",
    "determinant_numba",
    "determinant_numpy",
    "PERMUTATION_SUM_MAX_N",
]

PERMUTATION_SUM_MAX_N = 7


# --- numba kernels ---------------------------------------------------------


@_jit.njit
def _ryser_gray(a):
    n = a.shape[0]
    if n == 0:
        return 1.0
    rowsum = np.zeros(n)
    in_subset = np.zeros(n, dtype=np.bool_)
    total = 0.0
    size = 0
    for k in range(1, 1 << n):
        # column to toggle = index of lowest set bit of k
        j = 0
        while not (k >> j) & 1:
            j += 1
        if in_subset[j]:
            in_subset[j] = False
            size -= 1
            for i in range(n):
                rowsum[i] -= a[i, j]
        else:
            in_subset[j] = True
            size += 1
            for i in range(n):
                rowsum[i] += a[i, j]
        prod = 1.0
        for i in range(n):
            prod *= rowsum[i]
        if size & 1:
            total -= prod
        else:
            total += prod
    if n & 1:
        return -total
    return total


@_jit.njit
def _det_heap(a):
    # Heap's algorithm: every step is one transposition, so the sign flips.
    n = a.shape[0]
    perm = np.arange(n)
    c = np.zeros(n, dtype=np.int64)
    sign = 1.0
    prod = 1.0
    for i in range(n):
        prod *= a[i, perm[i]]
    total = prod
    i = 0
    while i < n:
        if c[i] < i:
            if i % 2 == 0:
                perm[0], perm[i] = perm[i], perm[0]
            else:
                perm[c[i]], perm[i] = perm[i], perm[c[i]]
            sign = -sign
            prod = 1.0
            for r in range(n):
                prod *= a[r, perm[r]]
            total += sign * prod
            c[i] += 1
            i = 0
        else:
            c[i] = 0
            i += 1
    return total


@_jit.njit
def _bareiss_nb(a):
    m = a.copy()
    n = m.shape[0]
    sign = 1.0
    prev = 1.0
    for k in range(n - 1):
        if m[k, k] == 0.0:
            piv = -1
            for r in range(k + 1, n):
                if m[r, k] != 0.0:
                    piv = r
                    break
            if piv < 0:
                return 0.0
            for col in range(n):
                m[k, col], m[piv, col] = m[piv, col], m[k, col]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i, j] = (m[i, j] * m[k, k] - m[i, k] * m[k, j]) / prev
        prev = m[k, k]
    return sign * m[n - 1, n - 1]


def permanent_numba(a: np.ndarray) -> float:
    return float(_ryser_gray(np.ascontiguousarray(a, dtype=np.float64)))


def determinant_numba(a: np.ndarray) -> float:
    a = np.ascontiguousarray(a, dtype=np.float64)
    n = a.shape[0]
    if n == 0:
        return 1.0
    if n <= PERMUTATION_SUM_MAX_N:
        return float(_det_heap(a))
    return float(_bareiss_nb(a))


# --- numpy kernels ---------------------------------------------------------


@cache
def _subset_table(n: int) -> tuple[np.ndarray, np.ndarray]:
    masks = np.arange(1 << n)
    table = ((masks[:, None] >> np.arange(n)) & 1).astype(np.float64)
    signs = np.where(table.sum(axis=1) % 2 == 1, -1.0, 1.0)
    return table, signs


@cache
def _permutation_table(n: int) -> tuple[np.ndarray, np.ndarray]:
    perms = np.array(list(permutations(range(n))), dtype=np.intp).reshape(-1, n)
    # parity from the inversion count of each permutation
    inv = (perms[:, :, None] > perms[:, None, :]) & np.triu(np.ones((n, n), dtype=bool), 1)
    signs = np.where(inv.sum(axis=(1, 2)) % 2 == 1, -1.0, 1.0)
    return perms, signs


def permanent_numpy(a: np.ndarray) -> float:
    a = np.asarray(a, dtype=np.float64)
    n = a.shape[0]
    if n == 0:
        return 1.0
    table, signs = _subset_table(n)
    prods = (table @ a.T).prod(axis=1)
    total = float(signs @ prods)
    return -total if n & 1 else total


def _bareiss_py(a: np.ndarray) -> float:
    m = np.array(a, dtype=np.float64)
    n = m.shape[0]
    sign = 1.0
    prev = 1.0
    for k in range(n - 1):
        if m[k, k] == 0.0:
            nz = np.flatnonzero(m[k + 1 :, k])
            if nz.size == 0:
                return 0.0
            piv = k + 1 + nz[0]
            m[[k, piv]] = m[[piv, k]]
            sign = -sign
        m[k + 1 :, k + 1 :] = (
            m[k + 1 :, k + 1 :] * m[k, k] - np.outer(m[k + 1 :, k], m[k, k + 1 :])
        ) / prev
        prev = m[k, k]
    return float(sign * m[n - 1, n - 1])


def determinant_numpy(a: np.ndarray) -> float:
    a = np.asarray(a, dtype=np.float64)
    n = a.shape[0]
    if n == 0:
        return 1.0
    if n <= PERMUTATION_SUM_MAX_N:
        perms, signs = _permutation_table(n)
        return float(signs @ a[np.arange(n), perms].prod(axis=1))
    return _bareiss_py(a)


# --- dispatch --------------------------------------------------------------


def _square(a) -> np.ndarray:
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def permanent(a) -> float:
    """Permanent of a square matrix (1 for the 0x0 matrix)."""
    a = _square(a)
    return permanent_numba(a) if _jit.USE_NUMBA else permanent_numpy(a)


def determinant(a) -> float:
    """Determinant of a square matrix (1 for the 0x0 matrix)."""
    a = _square(a)
    return determinant_numba(a) if _jit.USE_NUMBA else determinant_numpy(a)
