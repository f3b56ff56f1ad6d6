import pytest
from hypothesis import given, strategies as st

from qspace import (
    BOSE,
    FERMI,
    BasisKet,
    QSpaceError,
    StateVector,
    StatisticsMismatch,
    add,
    canonicalize,
    ket_state,
    occupation,
    scale,
    vacuum,
)
from naive import perm_sign
from strategies import amplitudes, state_pairs, states


def test_canonicalize_examples():
    assert canonicalize(FERMI, [1, 0]) == (BasisKet(FERMI, (0, 1)), -1)
    assert canonicalize(FERMI, [0, 0]) == (None, 1)
    assert canonicalize(BOSE, [2, 0, 2]) == (BasisKet(BOSE, (0, 2, 2)), 1)
    assert canonicalize("fermi", [2, 0, 1]) == (BasisKet(FERMI, (0, 1, 2)), 1)


def test_canonicalize_rejects_bad_mode():
    with pytest.raises(QSpaceError):
        canonicalize(FERMI, [0, 3], dim=3)
    with pytest.raises(QSpaceError):
        canonicalize(BOSE, [-1])


def test_basis_ket_requires_canonical_order():
    with pytest.raises(QSpaceError):
        BasisKet(FERMI, (1, 0))
    with pytest.raises(QSpaceError):
        BasisKet(FERMI, (1, 1))
    BasisKet(BOSE, (1, 1))


@given(st.sampled_from([BOSE, FERMI]), st.lists(st.integers(0, 5), max_size=6), st.randoms())
def test_permutation_invariance(stats, modes, rnd):
    perm = list(range(len(modes)))
    rnd.shuffle(perm)
    permuted = [modes[p] for p in perm]
    ket, phase = canonicalize(stats, modes)
    ket_p, phase_p = canonicalize(stats, permuted)
    assert ket == ket_p
    if ket is not None and stats is FERMI:
        assert phase_p == phase * perm_sign(perm)
    else:
        assert phase == phase_p == 1


@given(st.sampled_from([BOSE, FERMI]), st.lists(st.integers(0, 5), max_size=6))
def test_canonicalize_idempotent(stats, modes):
    ket, _ = canonicalize(stats, modes)
    if ket is not None:
        assert canonicalize(stats, ket.modes) == (ket, 1)


def test_vacuum():
    for s in (BOSE, FERMI):
        v = vacuum(s, 2)
        assert dict(v.terms) == {BasisKet(s, ()): 1 + 0j}


def test_add_examples():
    pm = ket_state(FERMI, 2, [0, 1])
    assert len(add(pm, scale(-1, pm))) == 0
    a, b = ket_state(BOSE, 3, [0]), ket_state(BOSE, 3, [1, 2], 2j)
    s = add(a, b)
    assert dict(s.terms) == {BasisKet(BOSE, (0,)): 1, BasisKet(BOSE, (1, 2)): 2j}


def test_from_modes_folds_phase_and_drops_null():
    x = ket_state(FERMI, 2, [1, 0])
    assert dict(x.terms) == {BasisKet(FERMI, (0, 1)): -1}
    assert len(ket_state(FERMI, 2, [0, 0])) == 0
    assert x.amplitude([1, 0]) == 1


def test_mixed_statistics_rejected():
    with pytest.raises(StatisticsMismatch):
        add(vacuum(BOSE, 1), vacuum(FERMI, 1))
    with pytest.raises(QSpaceError):
        add(vacuum(BOSE, 1), vacuum(BOSE, 2))


def test_scale_examples():
    pm = ket_state(FERMI, 2, [0, 1], 1 - 1j)
    assert len(scale(0, pm)) == 0
    assert scale(1, pm) == pm
    assert dict(scale(1j, pm).terms) == {BasisKet(FERMI, (0, 1)): 1 + 1j}
    with pytest.raises(QSpaceError):
        scale(float("nan"), pm)


def test_state_prunes_exact_zero():
    x = StateVector(BOSE, 2, {BasisKet(BOSE, (0,)): 0.0, BasisKet(BOSE, (1,)): 1.0})
    assert list(x.terms) == [BasisKet(BOSE, (1,))]


def test_state_rejects_out_of_range_mode():
    with pytest.raises(QSpaceError):
        StateVector(BOSE, 2, {BasisKet(BOSE, (2,)): 1})


def test_occupation():
    assert occupation(BasisKet(BOSE, (0, 0, 2))) == {0: 2, 2: 1}
    assert occupation(BasisKet(FERMI, (0, 1))) == {0: 1, 1: 1}
    assert occupation(BasisKet(BOSE, ())) == {}


def _close(x, y, tol=1e-12):
    keys = set(x.terms) | set(y.terms)
    return all(abs(x.terms.get(k, 0) - y.terms.get(k, 0)) <= tol for k in keys)


@given(state_pairs(count=3), amplitudes, amplitudes)
def test_vector_space_axioms(xyz, g, h):
    x, y, z = xyz
    zero = StateVector(x.stats, x.dim)
    assert add(x, y) == add(y, x)
    assert _close(add(add(x, y), z), add(x, add(y, z)))
    assert add(x, zero) == x
    assert len(add(x, scale(-1, x))) == 0
    assert _close(scale(g, add(x, y)), add(scale(g, x), scale(g, y)))
    assert _close(scale(g + h, x), add(scale(g, x), scale(h, x)))
    assert _close(scale(g, scale(h, x)), scale(g * h, x))


@given(states())
def test_states_are_canonical(x):
    for k in x.terms:
        assert canonicalize(x.stats, k.modes) == (k, 1)
        assert x.terms[k] != 0
