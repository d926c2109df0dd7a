import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dvconv.errors import InvalidGroup, InvalidState, UnsupportedScale
from dvconv.magic import mean_state
from dvconv.states import (
    DensityMatrix,
    StabilizerGroup,
    enumerate_msps,
    enumerate_pure_stabilizers,
    is_msps,
    ket_state,
    maximally_mixed,
    msps_from_group,
    random_density,
    state_from_json,
    state_to_json,
    t_state,
)
from dvconv.weyl import char_function


def test_density_matrix_validation():
    with pytest.raises(InvalidState):
        DensityMatrix(2, 1, np.eye(2, dtype=complex))  # trace 2
    with pytest.raises(InvalidState):
        DensityMatrix(2, 1, np.array([[0.5, 0.5], [-0.5, 0.5]], dtype=complex))
    with pytest.raises(InvalidState):
        DensityMatrix(2, 1, np.diag([1.5, -0.5]).astype(complex))


def test_random_density_rank_and_determinism():
    full = random_density(1, 3, 1)
    assert full.eigenvalues()[-1] > 0
    pure = random_density(2, 3, 1, rank=1)
    assert abs(pure.purity() - 1) < 1e-10
    again = random_density(1, 3, 1)
    assert np.array_equal(full.mat, again.mat)


def test_stabilizer_group_validation():
    with pytest.raises(InvalidGroup):
        # Z and X do not commute
        StabilizerGroup(3, 1, ((1, 0), (0, 1)), (0, 0))
    with pytest.raises(InvalidGroup):
        # dependent generators at n=2
        StabilizerGroup(3, 2, ((1, 0, 0, 0), (2, 0, 0, 0)), (0, 0))


def test_msps_empty_group():
    rho = msps_from_group(StabilizerGroup(3, 1, (), ()))
    assert np.max(np.abs(rho.mat - np.eye(3) / 3)) < 1e-12


def test_msps_z_group_is_zero_ket():
    rho = msps_from_group(StabilizerGroup(3, 1, ((1, 0),), (0,)))
    assert np.max(np.abs(rho.mat - ket_state(3, 1, [0]).mat)) < 1e-12


def test_msps_partial_group_n2():
    # <Z_1> at n=2: (1/3)|0><0| (x) I
    rho = msps_from_group(StabilizerGroup(3, 2, ((1, 0, 0, 0),), (0,)))
    expected = np.kron(ket_state(3, 1, [0]).mat, np.eye(3)) / 3
    assert np.max(np.abs(rho.mat - expected)) < 1e-12
    lam = rho.eigenvalues()
    assert np.sum(lam > 1e-10) == 3
    assert np.allclose(lam[lam > 1e-10], 1 / 3)


def test_is_msps_basics():
    ok, group = is_msps(maximally_mixed(3, 1))
    assert ok and group.r == 0
    ok, group = is_msps(ket_state(3, 1, [0]))
    assert ok and group.generators == ((1, 0),)
    ok, _ = is_msps(t_state())
    assert not ok


def test_enumerate_counts():
    assert len(enumerate_msps(2)) == 7
    assert len(enumerate_msps(3)) == 13
    assert len(enumerate_pure_stabilizers(3)) == 12
    with pytest.raises(UnsupportedScale):
        enumerate_msps(3, n=2)
    with pytest.raises(UnsupportedScale):
        enumerate_pure_stabilizers(5)


def test_enumerated_msps_all_detected():
    for d in (2, 3):
        for rho in enumerate_msps(d):
            ok, _ = is_msps(rho)
            assert ok


def test_pure_stabilizer_char_structure():
    for d in (2, 3):
        for rho in enumerate_pure_stabilizers(d):
            assert abs(rho.purity() - 1) < 1e-10
            mags = np.abs(char_function(rho).values)
            unit = np.abs(mags - 1) < 1e-9
            assert np.sum(unit) == d
            assert np.all(unit | (mags < 1e-9))


def test_d2_stabilizers_are_pauli_eigenstates():
    # the 6 qubit stabilizer states are the +-1 eigenstates of X, Y, Z
    paulis = [np.diag([1, -1]).astype(complex),
              np.array([[0, 1], [1, 0]], dtype=complex),
              np.array([[0, -1j], [1j, 0]], dtype=complex)]
    expected = []
    for P in paulis:
        for sign in (1, -1):
            expected.append((np.eye(2) + sign * P) / 2)
    found = enumerate_pure_stabilizers(2)
    for rho in found:
        assert any(np.max(np.abs(rho.mat - E)) < 1e-9 for E in expected)
    assert len(found) == 6


def test_msps_idempotent_under_mean_state():
    for rho in enumerate_msps(3):
        M = mean_state(rho)
        assert np.max(np.abs(M.mat - rho.mat)) < 1e-10


def test_same_group_distinct_phases_orthogonal():
    for label in [(1, 0), (0, 1), (1, 1), (1, 2)]:
        kets = [msps_from_group(StabilizerGroup(3, 1, (label,), (x,)))
                for x in range(3)]
        for i in range(3):
            for j in range(i + 1, 3):
                hs = np.trace(kets[i].mat @ kets[j].mat).real
                assert abs(hs) < 1e-10


@given(st.integers(0, 10**6))
@settings(max_examples=15)
def test_json_dense_roundtrip(seed):
    rho = random_density(seed, 3, 1)
    back = state_from_json(json.loads(json.dumps(state_to_json(rho))))
    assert np.max(np.abs(back.mat - rho.mat)) < 1e-12


def test_json_msps_and_preset_kinds():
    # phase exponent x on generator (1,0) selects the ket |d-x>
    obj = {"d": 3, "n": 1, "kind": "msps",
           "generators": [[1, 0]], "phases": [1]}
    rho = state_from_json(obj)
    assert np.max(np.abs(rho.mat - ket_state(3, 1, [2]).mat)) < 1e-10
    mixed = state_from_json({"d": 3, "n": 1, "kind": "preset",
                             "name": "maximally-mixed"})
    assert np.max(np.abs(mixed.mat - np.eye(3) / 3)) < 1e-12
