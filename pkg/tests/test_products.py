import math

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
    all_kets,
    inner,
    is_similar,
    ket_inner,
    ket_state,
    norm,
    normalize,
    occupation,
    scale,
    vacuum,
)
from qspace.products import match_matrix
from naive import delta_product_sum
from strategies import amplitudes, state_pairs, states


def test_ket_inner_examples():
    k = 3
    kk = BasisKet(BOSE, (k, k))
    assert ket_inner(kk, kk) == delta_product_sum(kk.modes, kk.modes, signed=False) == 2
    pm = BasisKet(FERMI, (0, 1))
    assert ket_inner(pm, pm) == delta_product_sum(pm.modes, pm.modes, signed=True) == 1
    assert ket_inner(BasisKet(BOSE, (0,)), BasisKet(BOSE, (0, 0))) == 0


def test_ket_inner_statistics_mismatch():
    with pytest.raises(StatisticsMismatch):
        ket_inner(BasisKet(BOSE, ()), BasisKet(FERMI, ()))


def test_match_matrix():
    m = match_matrix(BasisKet(BOSE, (0, 1, 1)), BasisKet(BOSE, (1, 1, 2)))
    assert m.tolist() == [[0, 0, 0], [1, 1, 0], [1, 1, 0]]


@pytest.mark.parametrize("stats", [BOSE, FERMI])
@pytest.mark.parametrize("dim,n", [(2, 2), (3, 3), (2, 5), (3, 4), (2, 6)])
def test_ket_inner_matches_delta_sum(stats, dim, n):
    kets = all_kets(stats, dim, n)
    for x in kets:
        for y in kets:
            assert ket_inner(x, y) == delta_product_sum(x.modes, y.modes, signed=stats is FERMI)


@pytest.mark.parametrize("dim,n", [(2, 4), (3, 5), (4, 7), (2, 7)])
def test_bose_self_inner_is_product_of_factorials(dim, n):
    for k in all_kets(BOSE, dim, n):
        expected = math.prod(math.factorial(c) for c in occupation(k).values())
        assert ket_inner(k, k) == expected


@pytest.mark.parametrize("dim", range(1, 6))
def test_fermi_kets_orthonormal(dim):
    kets = [k for n in range(dim + 1) for k in all_kets(FERMI, dim, n)]
    for x in kets:
        for y in kets:
            assert ket_inner(x, y) == (1 if x == y else 0)


def test_inner_examples():
    v = vacuum(FERMI, 2)
    assert inner(v, v) == 1
    pm = ket_state(FERMI, 2, [0, 1])
    assert inner(pm, pm) == 1
    assert inner(pm, scale(1j, pm)) == 1j
    assert inner(scale(1j, pm), pm) == -1j


def test_inner_vanishes_across_particle_numbers():
    x = ket_state(BOSE, 2, [0])
    y = ket_state(BOSE, 2, [0, 0])
    assert inner(x, y) == 0


@given(state_pairs(count=2))
def test_conjugate_symmetry(xy):
    x, y = xy
    assert abs(inner(x, y) - inner(y, x).conjugate()) <= 1e-12


@given(state_pairs(count=3), amplitudes, amplitudes)
def test_sesquilinearity(xyz, g, h):
    x, y, z = xyz
    lhs = inner(x, add(scale(g, y), scale(h, z)))
    rhs = g * inner(x, y) + h * inner(x, z)
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))
    lhs = inner(scale(g, x), y)
    assert abs(lhs - g.conjugate() * inner(x, y)) <= 1e-12 * max(1.0, abs(lhs))


@given(st.sampled_from([BOSE, FERMI]), st.integers(1, 3), st.integers(0, 3), st.integers(0, 3))
def test_disjoint_particle_numbers_orthogonal(stats, dim, n, m):
    if n == m or (stats is FERMI and max(n, m) > dim):
        return
    x = StateVector(stats, dim, {k: 1.0 for k in all_kets(stats, dim, n)})
    y = StateVector(stats, dim, {k: 1.0 for k in all_kets(stats, dim, m)})
    assert inner(x, y) == 0


def test_norm_examples():
    assert norm(vacuum(BOSE, 1)) == 1
    assert norm(ket_state(BOSE, 2, [1, 1])) == math.sqrt(2)
    assert norm(StateVector(BOSE, 2)) == 0


def test_normalize():
    x = normalize(ket_state(BOSE, 2, [1, 1]))
    assert x.terms[BasisKet(BOSE, (1, 1))] == pytest.approx(1 / math.sqrt(2), abs=1e-15)
    assert abs(norm(x) - 1) <= 1e-12
    y = normalize(x)
    assert all(abs(y.terms[k] - x.terms[k]) <= 1e-12 for k in x.terms)
    with pytest.raises(QSpaceError):
        normalize(StateVector(FERMI, 2))


@given(states())
def test_normalize_gives_unit_norm(x):
    if norm(x) > 1e-6:
        assert abs(norm(normalize(x)) - 1) <= 1e-12


def test_is_similar():
    pm = ket_state(FERMI, 2, [0, 1])
    mp = ket_state(FERMI, 2, [1, 0])
    assert is_similar(pm, pm)
    assert not is_similar(pm, mp)
    assert is_similar(pm, -mp)
    with_null = StateVector.from_modes(FERMI, 2, [([0, 1], 1), ([1, 1], 5)])
    assert is_similar(pm, with_null)
    with pytest.raises(StatisticsMismatch):
        is_similar(pm, ket_state(BOSE, 2, [0, 1]))
