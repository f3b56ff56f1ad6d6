"""Bosonic and fermionic inner products on occupation-number states.

The product of two n-particle kets is a sum over permutations of Kronecker
deltas between their mode sequences, i.e. the permanent (bosons) or the
determinant (fermions) of the 0/1 match matrix.  States extend it
sesquilinearly, conjugate-linear in the first argument.
"""

from __future__ import annotations

import math

import numpy as np

from .fock import BOSE, BasisKet, QSpaceError, StateVector, _check_stats, scale
from .kernels import determinant, permanent

__all__ = [
    "TOL",
    "match_matrix",
    "ket_inner",
    "inner",
    "norm",
    "normalize",
    "is_similar",
]

TOL = 1e-12


def match_matrix(x: BasisKet, y: BasisKet) -> np.ndarray:
    """``M[a, b] = 1`` iff ``x.modes[a] == y.modes[b]``; needs equal particle numbers."""
    if x.n != y.n:
        raise QSpaceError(f"match matrix needs equal particle numbers ({x.n} vs {y.n})")
    return (np.asarray(x.modes)[:, None] == np.asarray(y.modes)[None, :]).astype(np.float64)


def ket_inner(x: BasisKet, y: BasisKet) -> float:
    _check_stats(x.stats, y.stats)
    if x.n != y.n:
        return 0.0
    m = match_matrix(x, y)
    return permanent(m) if x.stats is BOSE else determinant(m)


def inner(x: StateVector, y: StateVector) -> complex:
    """``(x|y)``, conjugate-linear in ``x``."""
    _check_stats(x.stats, y.stats)
    total = 0j
    for kx, ax in x.terms.items():
        for ky, ay in y.terms.items():
            if kx.n != ky.n:
                continue
            s = ket_inner(kx, ky)
            if s:
                total += ax.conjugate() * ay * s
    return total


def norm(x: StateVector) -> float:
    sq = inner(x, x)
    if abs(sq.imag) > TOL * max(1.0, abs(sq.real)):
        raise ArithmeticError(f"(x|x) = {sq} is not real; inner product is inconsistent")
    if sq.real < -TOL:
        raise ArithmeticError(f"(x|x) = {sq.real} is negative; inner product is inconsistent")
    return math.sqrt(max(sq.real, 0.0))


def normalize(x: StateVector) -> StateVector:
    r = norm(x)
    if r <= TOL:
        raise QSpaceError("cannot normalize a zero-norm state")
    return scale(1.0 / r, x)


def is_similar(x: StateVector, y: StateVector, tol: float = TOL) -> bool:
    """True when ``x - y`` has (numerically) zero norm.

    Null-norm fermionic kets are removed at canonicalization, so this is
    equality of canonical forms up to ``tol``.
    """
    _check_stats(x.stats, y.stats)
    return norm(x - y) <= tol
