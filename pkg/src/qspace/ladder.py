"""Creation/annihilation operators acting on occupation-number states.

Creation prepends the new level to the ket's mode list and canonicalizes,
so for fermions the reordering sign is picked up and a repeated level gives
zero.  Annihilation removes one copy of the level; for fermions the removal
at 0-based position ``a`` carries ``(-1)**a``.  These two rules are mutually
adjoint under :func:`qspace.products.inner`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, NamedTuple, Sequence

from .fock import (
    BOSE,
    FERMI,
    QSpaceError,
    Statistics,
    StateVector,
    _check_stats,
    add,
    all_kets,
    canonicalize,
    scale,
)
from .products import TOL, norm

__all__ = [
    "Kind",
    "LadderOp",
    "LadderString",
    "OperatorExpr",
    "create",
    "annihilate",
    "apply_create",
    "apply_annihilate",
    "apply_op",
    "apply_string",
    "apply_expr",
    "number_operator",
    "RelationCheck",
    "CheckReport",
    "check_ccr",
    "check_car",
    "default_trials",
]


class Kind(enum.Enum):
    CREATE = "create"
    ANNIHILATE = "annihilate"


class LadderOp(NamedTuple):
    kind: Kind
    mode: int

    def __repr__(self) -> str:
        return f"a{'+' if self.kind is Kind.CREATE else ''}_{self.mode}"


def create(mode: int) -> LadderOp:
    return LadderOp(Kind.CREATE, int(mode))


def annihilate(mode: int) -> LadderOp:
    return LadderOp(Kind.ANNIHILATE, int(mode))


@dataclass(frozen=True)
class LadderString:
    """``coeff * ops[0] ops[1] ... ops[-1]``; the rightmost op acts first."""

    coeff: complex
    ops: tuple[LadderOp, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeff", complex(self.coeff))
        object.__setattr__(self, "ops", tuple(self.ops))


@dataclass(frozen=True)
class OperatorExpr:
    """Finite sum of ladder strings under one statistics."""

    stats: Statistics
    strings: tuple[LadderString, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "stats", Statistics.parse(self.stats))
        object.__setattr__(self, "strings", tuple(self.strings))

    def __add__(self, other: "OperatorExpr") -> "OperatorExpr":
        _check_stats(self.stats, other.stats)
        return OperatorExpr(self.stats, self.strings + other.strings)

    def __rmul__(self, g) -> "OperatorExpr":
        return OperatorExpr(self.stats, [LadderString(g * s.coeff, s.ops) for s in self.strings])

    def __sub__(self, other: "OperatorExpr") -> "OperatorExpr":
        return self + (-1) * other

    def __matmul__(self, other: "OperatorExpr") -> "OperatorExpr":
        """Operator product ``self @ other`` (``other`` acts first)."""
        _check_stats(self.stats, other.stats)
        return OperatorExpr(
            self.stats,
            [LadderString(a.coeff * b.coeff, a.ops + b.ops) for a in self.strings for b in other.strings],
        )

    @classmethod
    def single(cls, stats, *ops: LadderOp, coeff: complex = 1) -> "OperatorExpr":
        return cls(stats, [LadderString(coeff, ops)])


def _check_mode(k: int, x: StateVector) -> int:
    k = int(k)
    if not 0 <= k < x.dim:
        raise QSpaceError(f"mode index {k} outside [0, {x.dim})")
    return k


def apply_create(k: int, x: StateVector) -> StateVector:
    k = _check_mode(k, x)
    out: dict = {}
    for ket, amp in x.terms.items():
        new, phase = canonicalize(x.stats, (k,) + ket.modes)
        if new is None:
            continue
        out[new] = out.get(new, 0j) + phase * amp
    return StateVector(x.stats, x.dim, out)


def apply_annihilate(k: int, x: StateVector) -> StateVector:
    k = _check_mode(k, x)
    fermi = x.stats is FERMI
    out: dict = {}
    for ket, amp in x.terms.items():
        modes = ket.modes
        for pos, m in enumerate(modes):
            if m != k:
                continue
            sign = -1 if (fermi and pos & 1) else 1
            new, _ = canonicalize(x.stats, modes[:pos] + modes[pos + 1 :])
            out[new] = out.get(new, 0j) + sign * amp
    return StateVector(x.stats, x.dim, out)


def apply_op(op: LadderOp, x: StateVector) -> StateVector:
    if op.kind is Kind.CREATE:
        return apply_create(op.mode, x)
    return apply_annihilate(op.mode, x)


def apply_string(s: LadderString, x: StateVector) -> StateVector:
    for op in reversed(s.ops):
        if not x.terms:
            break
        x = apply_op(op, x)
    return scale(s.coeff, x)


def apply_expr(a: OperatorExpr, x: StateVector) -> StateVector:
    _check_stats(a.stats, x.stats)
    out = StateVector(x.stats, x.dim)
    for s in a.strings:
        out = add(out, apply_string(s, x))
    return out


def number_operator(stats, k: int) -> OperatorExpr:
    return OperatorExpr.single(stats, create(k), annihilate(k))


# --- commutation relation checks -------------------------------------------


class RelationCheck(NamedTuple):
    relation: str
    i: int
    j: int
    trial: int
    residual: float


@dataclass
class CheckReport:
    """Outcome of a CCR/CAR sweep; ``failures`` is sorted by ``(i, j)``."""

    name: str
    checked: int = 0
    failures: list[RelationCheck] = field(default_factory=list)
    max_residual: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return (
            f"{self.name}: {status} {self.checked - len(self.failures)}/{self.checked} "
            f"(max residual {self.max_residual:.3g})"
        )


def default_trials(stats, dim: int, max_n: int | None = None) -> list[StateVector]:
    """All canonical kets with up to ``max_n`` particles, as unit-amplitude states.

    ``max_n`` defaults to 4 for bosons and ``dim`` for fermions (the full
    Fock space).
    """
    stats = Statistics.parse(stats)
    if max_n is None:
        max_n = 4 if stats is BOSE else dim
    return [
        StateVector(stats, dim, {ket: 1.0})
        for n in range(max_n + 1)
        for ket in all_kets(stats, dim, n)
    ]


def _relations(stats: Statistics, i: int, j: int):
    # (label, list of (coeff, ops)) for residual = commutator/anticommutator - delta
    s = -1 if stats is BOSE else 1
    br = "[{},{}]" if stats is BOSE else "{{{},{}}}"
    ai, aj, ci, cj = annihilate(i), annihilate(j), create(i), create(j)
    return [
        (br.format(f"a_{i}", f"a+_{j}"), [(1, (ai, cj)), (s, (cj, ai))], 1.0 if i == j else 0.0),
        (br.format(f"a_{i}", f"a_{j}"), [(1, (ai, aj)), (s, (aj, ai))], 0.0),
        (br.format(f"a+_{i}", f"a+_{j}"), [(1, (ci, cj)), (s, (cj, ci))], 0.0),
    ]


def _check_relations(name: str, stats: Statistics, dim: int, trials: Sequence[StateVector], tol: float) -> CheckReport:
    report = CheckReport(name)
    for x in trials:
        _check_stats(stats, x.stats)
        if x.dim != dim:
            raise QSpaceError(f"trial state has dim {x.dim}, expected {dim}")
    for i, j in product(range(dim), repeat=2):
        for label, strings, delta in _relations(stats, i, j):
            expr = OperatorExpr(stats, [LadderString(c, ops) for c, ops in strings])
            for t, x in enumerate(trials):
                residual = norm(apply_expr(expr, x) - scale(delta, x))
                report.checked += 1
                report.max_residual = max(report.max_residual, residual)
                if residual > tol:
                    report.failures.append(RelationCheck(label, i, j, t, residual))
    return report


def check_ccr(dim: int, trials: Iterable[StateVector] | None = None, tol: float = TOL) -> CheckReport:
    """Check ``[a_i, a+_j] = delta_ij``, ``[a_i, a_j] = [a+_i, a+_j] = 0`` on bosonic trials."""
    trials = default_trials(BOSE, dim) if trials is None else list(trials)
    return _check_relations("ccr", BOSE, dim, trials, tol)


def check_car(dim: int, trials: Iterable[StateVector] | None = None, tol: float = TOL) -> CheckReport:
    """Check ``{c_i, c+_j} = delta_ij``, ``{c_i, c_j} = {c+_i, c+_j} = 0`` on fermionic trials."""
    trials = default_trials(FERMI, dim) if trials is None else list(trials)
    return _check_relations("car", FERMI, dim, trials, tol)

