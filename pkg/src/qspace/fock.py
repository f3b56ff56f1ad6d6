"""Occupation-number kets and finite linear combinations of them.

A ket records only which single-particle levels are occupied and how many
times.  Any ordering of the occupied levels is accepted on input; kets are
stored in a canonical (ascending) order and the sign of the reordering is
folded into the amplitude for fermions.
"""

from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

__all__ = [
    "QSpaceError",
    "StatisticsMismatch",
    "Statistics",
    "BOSE",
    "FERMI",
    "BasisKet",
    "StateVector",
    "canonicalize",
    "permutation_sign",
    "vacuum",
    "ket_state",
    "add",
    "scale",
    "occupation",
    "all_kets",
]


class QSpaceError(ValueError):
    """Invalid input to a Q-space operation (bad mode, shape, zero norm...)."""


class StatisticsMismatch(QSpaceError):
    """Bose and Fermi objects were mixed in one operation."""


class Statistics(enum.Enum):
    BOSE = "bose"
    FERMI = "fermi"

    @classmethod
    def parse(cls, value: "Statistics | str") -> "Statistics":
        if isinstance(value, Statistics):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise QSpaceError(f"unknown statistics {value!r}") from None


BOSE = Statistics.BOSE
FERMI = Statistics.FERMI


def _check_stats(a: Statistics, b: Statistics) -> None:
    if a is not b:
        raise StatisticsMismatch(f"cannot combine {a.value} and {b.value} objects")


@dataclass(frozen=True, order=True)
class BasisKet:
    """A canonical occupation-number ket ``|i_1 i_2 ... i_n)``.

    Use :func:`canonicalize` to build one from an arbitrary mode sequence;
    the constructor only checks that ``modes`` is already canonical.
    """

    stats: Statistics
    modes: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        modes = tuple(int(m) for m in self.modes)
        object.__setattr__(self, "modes", modes)
        if any(m < 0 for m in modes):
            raise QSpaceError(f"negative mode index in {modes}")
        if self.stats is FERMI:
            ok = all(a < b for a, b in zip(modes, modes[1:]))
        else:
            ok = all(a <= b for a, b in zip(modes, modes[1:]))
        if not ok:
            raise QSpaceError(f"modes {modes} are not canonical for {self.stats.value}")

    @property
    def n(self) -> int:
        return len(self.modes)

    def __repr__(self) -> str:
        return f"|{','.join(map(str, self.modes))})_{self.stats.value[0]}"


def permutation_sign(seq: Sequence[int]) -> int:
    """Parity sign of the permutation that sorts ``seq`` (distinct entries)."""
    inversions = 0
    for a in range(len(seq)):
        for b in range(a + 1, len(seq)):
            if seq[a] > seq[b]:
                inversions += 1
    return -1 if inversions & 1 else 1


def canonicalize(
    stats: Statistics | str, modes: Iterable[int], dim: int | None = None
) -> tuple[BasisKet | None, int]:
    """Bring a mode sequence to canonical order.

    Returns ``(ket, phase)``.  For bosons the phase is always +1.  For
    fermions it is the parity of the sorting permutation, and ``ket`` is
    ``None`` when a level repeats (the null-norm vector, identified with 0).
    """
    stats = Statistics.parse(stats)
    modes = [int(m) for m in modes]
    for m in modes:
        if m < 0 or (dim is not None and m >= dim):
            raise QSpaceError(f"mode index {m} outside [0, {dim})")
    ordered = tuple(sorted(modes))
    if stats is BOSE:
        return BasisKet(stats, ordered), 1
    if any(a == b for a, b in zip(ordered, ordered[1:])):
        return None, 1
    return BasisKet(stats, ordered), permutation_sign(modes)


def _as_complex(value) -> complex:
    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise QSpaceError(f"non-finite amplitude {value!r}")
    return z


@dataclass(frozen=True)
class StateVector:
    """Finite complex combination of canonical kets over ``dim`` levels.

    Exact zeros are dropped at construction.  Instances are treated as
    immutable; every operation returns a new state.
    """

    stats: Statistics
    dim: int
    terms: Mapping[BasisKet, complex] = field(default_factory=dict)

    def __post_init__(self) -> None:
        stats = Statistics.parse(self.stats)
        object.__setattr__(self, "stats", stats)
        if int(self.dim) < 0:
            raise QSpaceError("dimension must be non-negative")
        object.__setattr__(self, "dim", int(self.dim))
        clean: dict[BasisKet, complex] = {}
        for ket, amp in self.terms.items():
            if not isinstance(ket, BasisKet):
                raise QSpaceError(f"term key {ket!r} is not a BasisKet")
            _check_stats(stats, ket.stats)
            if ket.modes and ket.modes[-1] >= self.dim:
                raise QSpaceError(f"{ket!r} uses a mode outside [0, {self.dim})")
            z = _as_complex(amp)
            if z != 0:
                clean[ket] = z
        object.__setattr__(self, "terms", clean)

    @classmethod
    def from_modes(
        cls, stats: Statistics | str, dim: int, pairs: Iterable[tuple[Sequence[int], complex]]
    ) -> "StateVector":
        """Build a state from ``(modes, amplitude)`` pairs in any mode order.

        Fermionic reordering signs are folded into the amplitudes and
        repeated fermionic levels are dropped.
        """
        stats = Statistics.parse(stats)
        acc: dict[BasisKet, complex] = {}
        for modes, amp in pairs:
            ket, phase = canonicalize(stats, modes, dim)
            if ket is None:
                continue
            acc[ket] = acc.get(ket, 0j) + phase * _as_complex(amp)
        return cls(stats, dim, acc)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items()))

    def amplitude(self, modes: Sequence[int]) -> complex:
        """Amplitude of ``modes`` (any order; the fermionic sign is applied)."""
        ket, phase = canonicalize(self.stats, modes, self.dim)
        if ket is None:
            return 0j
        return phase * self.terms.get(ket, 0j)

    def particle_numbers(self) -> set[int]:
        return {k.n for k in self.terms}

    def __add__(self, other: "StateVector") -> "StateVector":
        return add(self, other)

    def __sub__(self, other: "StateVector") -> "StateVector":
        return add(self, scale(-1, other))

    def __neg__(self) -> "StateVector":
        return scale(-1, self)

    def __rmul__(self, g) -> "StateVector":
        return scale(g, self)

    def __repr__(self) -> str:
        if not self.terms:
            return f"StateVector({self.stats.value}, dim={self.dim}, 0)"
        body = " + ".join(f"({a:.6g}){k!r}" for k, a in self)
        return f"StateVector({self.stats.value}, dim={self.dim}, {body})"


def vacuum(stats: Statistics | str, dim: int = 0) -> StateVector:
    """The no-particle state ``|0)`` with unit amplitude."""
    stats = Statistics.parse(stats)
    return StateVector(stats, dim, {BasisKet(stats, ()): 1 + 0j})


def ket_state(stats: Statistics | str, dim: int, modes: Sequence[int], amp: complex = 1) -> StateVector:
    """Single-ket state; ``modes`` may be in any order."""
    return StateVector.from_modes(stats, dim, [(modes, amp)])


def add(x: StateVector, y: StateVector) -> StateVector:
    _check_stats(x.stats, y.stats)
    if x.dim != y.dim:
        raise QSpaceError(f"dimension mismatch: {x.dim} vs {y.dim}")
    out = dict(x.terms)
    for ket, amp in y.terms.items():
        out[ket] = out.get(ket, 0j) + amp
    return StateVector(x.stats, x.dim, out)


def scale(g, x: StateVector) -> StateVector:
    g = _as_complex(g)
    return StateVector(x.stats, x.dim, {k: g * a for k, a in x.terms.items()})


def occupation(ket: BasisKet) -> dict[int, int]:
    """Occupation number of every occupied level."""
    return dict(Counter(ket.modes))


def all_kets(stats: Statistics | str, dim: int, n: int) -> list[BasisKet]:
    """Every canonical ``n``-particle ket over ``dim`` levels, in lexicographic order."""
    from itertools import combinations, combinations_with_replacement

    stats = Statistics.parse(stats)
    gen = combinations if stats is FERMI else combinations_with_replacement
    return [BasisKet(stats, modes) for modes in gen(range(dim), n)]
