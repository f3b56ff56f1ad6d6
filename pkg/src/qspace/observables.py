"""One- and two-body observables in ladder form, and spin-1/2 correlations.

Spin levels use the convention ``+ -> 0`` and ``- -> 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fock import QSpaceError, Statistics, StateVector
from .ladder import LadderString, OperatorExpr, annihilate, apply_expr, create
from .products import TOL, inner

__all__ = [
    "UP",
    "DOWN",
    "Direction",
    "build_one_body",
    "one_body_from_spectral",
    "build_two_body",
    "correlation_coeffs",
    "correlation_operator",
    "sigma_n",
    "sigma_z",
    "expectation",
    "is_hermitian",
    "direction_grid",
]

UP, DOWN = 0, 1


def _square(t, name="t") -> np.ndarray:
    t = np.asarray(t, dtype=np.complex128)
    if t.ndim != 2 or t.shape[0] != t.shape[1]:
        raise QSpaceError(f"{name} must be a square matrix, got shape {t.shape}")
    if not np.all(np.isfinite(t)):
        raise QSpaceError(f"{name} has non-finite entries")
    return t


def is_hermitian(t, tol: float = TOL) -> bool:
    t = _square(t)
    return bool(np.allclose(t, t.conj().T, rtol=0.0, atol=tol))


def build_one_body(t, stats: Statistics | str) -> OperatorExpr:
    """``sum_ab t[a, b] a+_a a_b`` (zero coefficients skipped)."""
    t = _square(t)
    d = t.shape[0]
    strings = [
        LadderString(t[a, b], (create(a), annihilate(b)))
        for a in range(d)
        for b in range(d)
        if t[a, b] != 0
    ]
    return OperatorExpr(stats, strings)


def one_body_from_spectral(eigvals, eigvecs, tol: float = 1e-10) -> np.ndarray:
    """Coefficient matrix ``U diag(eigvals) U^dagger`` from an orthonormal eigenbasis.

    ``eigvecs[:, k]`` is the k-th eigenvector in the level basis.
    """
    u = _square(eigvecs, "eigvecs")
    lam = np.asarray(eigvals, dtype=np.float64)
    if lam.shape != (u.shape[0],):
        raise QSpaceError(f"need {u.shape[0]} eigenvalues, got shape {lam.shape}")
    if not np.allclose(u.conj().T @ u, np.eye(u.shape[0]), rtol=0.0, atol=tol):
        raise QSpaceError("eigenvector columns are not orthonormal")
    return (u * lam) @ u.conj().T


def build_two_body(v, stats: Statistics | str) -> OperatorExpr:
    """``1/2 sum V[a, b, c, d] a+_a a+_b a_d a_c`` (zero coefficients skipped).

    Note the annihilator order ``a_d a_c``: with it, ``V[a,b,c,d] =
    A[a,c] B[b,d]`` gives the pair operator ``sum_{i != j} A_i B_j``.
    """
    v = np.asarray(v, dtype=np.complex128)
    if v.ndim != 4 or len(set(v.shape)) != 1:
        raise QSpaceError(f"two-body tensor must have shape (D, D, D, D), got {v.shape}")
    if not np.all(np.isfinite(v)):
        raise QSpaceError("two-body tensor has non-finite entries")
    strings = [
        LadderString(0.5 * v[idx], (create(idx[0]), create(idx[1]), annihilate(idx[3]), annihilate(idx[2])))
        for idx in zip(*np.nonzero(v))
    ]
    return OperatorExpr(stats, strings)


def correlation_coeffs(a, b) -> np.ndarray:
    """Two-body tensor of the symmetric correlation of one-body ``a`` and ``b``.

    ``V[p,q,r,s] = (a[p,r] b[q,s] + b[p,r] a[q,s]) / 2``.  Through
    :func:`build_two_body` this is ``1/4 sum_{i != j} (a_i b_j + b_i a_j)``,
    which on two particles is ``(a x b + b x a) / 2``.
    """
    a = _square(a, "a")
    b = _square(b, "b")
    if a.shape != b.shape:
        raise QSpaceError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return 0.5 * (np.einsum("pr,qs->pqrs", a, b) + np.einsum("pr,qs->pqrs", b, a))


def correlation_operator(a, b, stats: Statistics | str = "fermi") -> OperatorExpr:
    return build_two_body(correlation_coeffs(a, b), stats)


@dataclass(frozen=True)
class Direction:
    """Unit vector ``(sin t cos p, sin t sin p, cos t)``; ``theta`` in [0, pi], ``phi`` in [0, 2 pi)."""

    theta: float
    phi: float = 0.0

    def __post_init__(self) -> None:
        if not (0.0 <= self.theta <= math.pi):
            raise QSpaceError(f"theta={self.theta} outside [0, pi]")
        if not (0.0 <= self.phi < 2 * math.pi):
            raise QSpaceError(f"phi={self.phi} outside [0, 2 pi)")


def sigma_n(direction: Direction | float, phi: float | None = None, dim: int = 2) -> np.ndarray:
    """Pauli matrix along ``direction`` as a 2x2 one-body coefficient matrix.

    Accepts a :class:`Direction` or ``sigma_n(theta, phi)``.
    """
    if dim != 2:
        raise QSpaceError(f"spin-1/2 operators need dim 2, not {dim}")
    if not isinstance(direction, Direction):
        direction = Direction(float(direction), 0.0 if phi is None else float(phi))
    ct, st = math.cos(direction.theta), math.sin(direction.theta)
    e = complex(math.cos(direction.phi), math.sin(direction.phi))
    return np.array([[ct, e.conjugate() * st], [e * st, -ct]], dtype=np.complex128)


def sigma_z() -> np.ndarray:
    return np.diag([1.0 + 0j, -1.0 + 0j])


def expectation(a: OperatorExpr, x: StateVector) -> complex:
    """``(x|A|x) / (x|x)``."""
    den = inner(x, x)
    if abs(den) <= TOL:
        raise QSpaceError("expectation value of a zero-norm state")
    return inner(x, apply_expr(a, x)) / den


def direction_grid(theta_steps: int, phi_steps: int) -> list[tuple[int, int, float, float]]:
    """``(i, j, theta_i, phi_j)`` with theta spanning [0, pi] and phi in [0, 2 pi)."""
    if theta_steps < 1 or phi_steps < 1:
        raise QSpaceError("grid step counts must be >= 1")
    thetas = [0.0] if theta_steps == 1 else [math.pi * (i / (theta_steps - 1)) for i in range(theta_steps)]
    phis = [2 * math.pi * j / phi_steps for j in range(phi_steps)]
    return [(i, j, t, p) for i, t in enumerate(thetas) for j, p in enumerate(phis)]
