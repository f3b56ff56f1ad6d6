"""Labeled tensor-product reference formalism.

Particles are given slots, n-particle states are dense arrays of shape
``(D,) * n``, and kets are (anti)symmetrized by summing over slot
permutations.  Nothing here goes through ladder operators or the
permanent/determinant kernels, so it serves as an independent check of the
occupation-number code.

Conventions: :func:`embed` is unnormalized, so that
``labeled_inner(embed(x), embed(y)) == n! * ket_inner(x, y)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import permutations
from typing import Callable

import numpy as np

from .fock import BOSE, FERMI, BasisKet, QSpaceError, Statistics, StateVector, all_kets, permutation_sign
from .products import inner

__all__ = [
    "MAX_LOG2_SIZE",
    "embed",
    "embed_state",
    "labeled_inner",
    "permute_slots",
    "first_quantized_one_body",
    "first_quantized_two_body",
    "labeled_expectation",
    "OracleReport",
    "compare_formulations",
]

MAX_LOG2_SIZE = 16

LabeledOperator = Callable[[np.ndarray], np.ndarray]


def _check_size(n: int, dim: int) -> None:
    if n and dim > 1 and n * math.log2(dim) > MAX_LOG2_SIZE:
        raise QSpaceError(f"labeled space D^n = {dim}^{n} exceeds the 2^{MAX_LOG2_SIZE} cap")


def embed(ket: BasisKet, dim: int, modes=None) -> np.ndarray:
    """(Anti)symmetrized labeled image of a ket, unnormalized.

    ``modes`` overrides ``ket.modes`` with an arbitrary (possibly repeated,
    unsorted) sequence; for fermions a repeat yields the zero array.
    """
    modes = tuple(ket.modes if modes is None else modes)
    n = len(modes)
    _check_size(n, dim)
    out = np.zeros((dim,) * n, dtype=np.complex128)
    fermi = ket.stats is FERMI
    for p in permutations(range(n)):
        sign = permutation_sign(p) if fermi else 1
        out[tuple(modes[k] for k in p)] += sign
    return out


def embed_state(x: StateVector, n: int | None = None) -> np.ndarray:
    """Labeled image of a fixed-particle-number state.

    ``n`` is only needed for the empty state, whose particle number is
    otherwise ambiguous.
    """
    ns = x.particle_numbers()
    if len(ns) > 1 or (n is not None and ns and ns != {n}):
        raise QSpaceError(f"state has particle numbers {sorted(ns)}, expected a single n")
    if n is None:
        n = ns.pop() if ns else 0
    _check_size(n, x.dim)
    out = np.zeros((x.dim,) * n, dtype=np.complex128)
    for ket, amp in x.terms.items():
        out += amp * embed(ket, x.dim)
    return out


def labeled_inner(u: np.ndarray, v: np.ndarray) -> complex:
    u = np.asarray(u)
    v = np.asarray(v)
    if u.shape != v.shape:
        raise QSpaceError(f"shape mismatch: {u.shape} vs {v.shape}")
    return complex(np.vdot(u, v))


def permute_slots(u: np.ndarray, perm) -> np.ndarray:
    """Relabel particle slots: slot ``k`` of the result is slot ``perm[k]`` of ``u``."""
    return np.transpose(u, perm)


def _apply_at(m: np.ndarray, u: np.ndarray, slot: int) -> np.ndarray:
    # (m acting on `slot`) u
    return np.moveaxis(np.tensordot(m, u, axes=([1], [slot])), 0, slot)


def first_quantized_one_body(t, n: int) -> LabeledOperator:
    """``sum_i t(i)`` on n labeled particles."""
    t = np.asarray(t, dtype=np.complex128)
    if n < 1:
        raise QSpaceError("one-body operator needs n >= 1")

    def apply(u: np.ndarray) -> np.ndarray:
        if u.ndim != n:
            raise QSpaceError(f"expected an {n}-particle array, got ndim {u.ndim}")
        return sum(_apply_at(t, u, i) for i in range(n))

    return apply


def first_quantized_two_body(a, b, n: int) -> LabeledOperator:
    """``1/4 sum_{i != j} (a(i) b(j) + b(i) a(j))``; for n = 2 this is ``(a x b + b x a) / 2``."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if n < 2:
        raise QSpaceError("two-body operator needs n >= 2")

    def apply(u: np.ndarray) -> np.ndarray:
        if u.ndim != n:
            raise QSpaceError(f"expected an {n}-particle array, got ndim {u.ndim}")
        out = np.zeros_like(u, dtype=np.complex128)
        for i in range(n):
            for j in range(n):
                if i != j:
                    out += _apply_at(a, _apply_at(b, u, j), i)
                    out += _apply_at(b, _apply_at(a, u, j), i)
        return 0.25 * out

    return apply


def labeled_expectation(op: LabeledOperator, u: np.ndarray) -> complex:
    den = labeled_inner(u, u)
    if abs(den) == 0:
        raise QSpaceError("expectation value of a zero vector")
    return labeled_inner(u, op(u)) / den


# --- randomized comparison of the two formulations -------------------------


@dataclass
class OracleReport:
    seed: int
    trials: int
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    max_error: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return (
            f"oracle: {status} {self.checked - len(self.failures)}/{self.checked} "
            f"(seed {self.seed}, {self.trials} trials, max error {self.max_error:.3g})"
        )


def _random_hermitian(rng: np.random.Generator, d: int) -> np.ndarray:
    m = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return 0.5 * (m + m.conj().T)


def _random_state(rng: np.random.Generator, stats: Statistics, dim: int, n: int, empty: bool = False) -> StateVector:
    if empty:
        return StateVector(stats, dim)
    kets = all_kets(stats, dim, n)
    keep = rng.random(len(kets)) < 0.7
    keep[rng.integers(len(kets))] = True
    terms = {}
    for ket, k in zip(kets, keep):
        if k:
            # small Gaussian integers keep every inner product exact in float64
            amp = 0j
            while amp == 0:
                amp = complex(int(rng.integers(-3, 4)), int(rng.integers(-3, 4)))
            terms[ket] = amp
    return StateVector(stats, dim, terms)


def compare_formulations(seed: int = 42, trials: int = 100, tol: float = 1e-10) -> OracleReport:
    """Randomized agreement check between the Q-space code and the labeled oracle.

    Each trial draws the statistics, ``D <= 3`` and ``n <= 3`` and checks

    - ``labeled_inner(embed x, embed y) == n! (x|y)`` exactly,
    - one-body expectations agree within ``tol``,
    - symmetric two-body correlation expectations agree within ``tol`` (n >= 2).

    Trial 0 uses the empty state.  Per-trial generators are seeded from
    ``(seed, trial)`` so results do not depend on evaluation order.
    """
    # imported here so that tests can patch the ladder/observable functions
    from .observables import build_one_body, correlation_operator, expectation

    report = OracleReport(seed, trials)

    def record(ok: bool, err: float, what: str) -> None:
        report.checked += 1
        if math.isfinite(err):
            report.max_error = max(report.max_error, err)
        if not ok:
            report.failures.append(what)

    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        stats = BOSE if rng.random() < 0.5 else FERMI
        dim = int(rng.integers(1, 4))
        n_max = 3 if stats is BOSE else dim
        n = int(rng.integers(0, n_max + 1))
        empty = trial == 0
        x = _random_state(rng, stats, dim, n, empty)
        y = _random_state(rng, stats, dim, n, empty)
        tag = f"trial {trial} ({stats.value}, D={dim}, n={n})"

        ex, ey = embed_state(x, n), embed_state(y, n)
        lhs = labeled_inner(ex, ey)
        rhs = math.factorial(n) * inner(x, y)
        record(lhs == rhs, abs(lhs - rhs), f"{tag}: labeled inner {lhs} != n! (x|y) = {rhs}")

        if empty or n == 0:
            continue
        t = _random_hermitian(rng, dim)
        q = expectation(build_one_body(t, stats), x)
        o = labeled_expectation(first_quantized_one_body(t, n), ex)
        record(abs(q - o) <= tol, abs(q - o), f"{tag}: one-body {q} vs oracle {o}")

        if n < 2:
            continue
        a, b = _random_hermitian(rng, dim), _random_hermitian(rng, dim)
        q = expectation(correlation_operator(a, b, stats), x)
        o = labeled_expectation(first_quantized_two_body(a, b, n), ex)
        record(abs(q - o) <= tol, abs(q - o), f"{tag}: two-body {q} vs oracle {o}")
    return report
