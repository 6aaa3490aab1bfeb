import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from oracles import pair_rdm_bruteforce, qubit_state
from rabi3q.errors import DimensionMismatch, NotXForm
from rabi3q.exact import solve_converged, solve_exact
from rabi3q.model import JointState, ModelParams, auto_cutoff
from rabi3q.observables import (
    TwoQubitRDM,
    dicke_to_qubits,
    fidelity,
    pairwise_entanglement,
    partial_transpose_negativity,
    quadratic_entanglement,
    rdm_from_moments,
    state_entanglement,
    two_qubit_rdm,
    x_state_entanglement,
)
from rabi3q.transform import transformed_ground

SQ3 = math.sqrt(3)
G0_X_ENTRIES = np.array(
    [
        [0.25, 0, 0, 0.25],
        [0, 0.25, 0.25, 0],
        [0, 0.25, 0.25, 0],
        [0.25, 0, 0, 0.25],
    ]
)

complex4 = arrays(
    np.complex128,
    4,
    elements=st.complex_numbers(max_magnitude=1, allow_nan=False, allow_infinity=False),
).filter(lambda v: np.linalg.norm(v) > 1e-3)


def test_dicke_top_state():
    assert np.allclose(dicke_to_qubits([0, 0, 0, 1]), np.eye(8)[0])
    assert np.allclose(dicke_to_qubits([1, 0, 0, 0]), np.eye(8)[7])


def test_dicke_w_state():
    psi = dicke_to_qubits([0, 0, 1, 0])
    # |ees>, |ese>, |see> with e = 0
    assert np.allclose(psi[[1, 2, 4]], 1 / SQ3)
    assert np.allclose(np.delete(psi, [1, 2, 4]), 0)


@settings(max_examples=60, deadline=None)
@given(a=complex4, b=complex4)
def test_dicke_isometry(a, b):
    a = a / np.linalg.norm(a)
    b = b / np.linalg.norm(b)
    qa, qb = dicke_to_qubits(a), dicke_to_qubits(b)
    assert np.linalg.norm(qa) == pytest.approx(1, abs=1e-12)
    assert abs(np.vdot(qa, qb) - np.vdot(a, b)) < 1e-12
    assert np.allclose(qa, qubit_state(a), atol=1e-14)


def _states():
    out = []
    for w_c, g in [(1.0, 0.0), (1.0, 0.25), (0.8, 0.5), (1.2, 0.9), (1.0, 1.6)]:
        p = ModelParams(1.0, w_c, g)
        n = auto_cutoff(g / w_c)
        out.append(solve_exact(p, n).state)
        out.append(transformed_ground(p, n).state)
    return out


STATES = _states()


@pytest.mark.parametrize("state", STATES[:4])
def test_rdm_against_bruteforce_trace(state):
    for traced in (1, 2, 3):
        rho = two_qubit_rdm(state, traced).rho
        assert np.abs(rho - pair_rdm_bruteforce(state.amplitudes, state.cutoff, traced)).max() < 1e-12


@pytest.mark.parametrize("state", STATES)
def test_rdm_traced_qubit_irrelevant(state):
    r3 = two_qubit_rdm(state, 3).rho
    for q in (1, 2):
        assert np.abs(two_qubit_rdm(state, q).rho - r3).max() < 1e-12


@pytest.mark.parametrize("state", STATES)
def test_rdm_validity_and_symmetry(state):
    rdm = two_qubit_rdm(state)
    assert rdm.validity_errors() == []
    r = rdm.rho
    assert r[1, 1] == pytest.approx(r[2, 2], abs=1e-12)
    assert abs(r[1, 2].imag) < 1e-12


def test_rdm_decoupled_ground_state():
    state = solve_exact(ModelParams(1.0, 1.0, 0.0), 10).state
    rdm = two_qubit_rdm(state)
    assert np.allclose(rdm.x_part().rho, G0_X_ENTRIES, atol=1e-12)
    # a product of |-x> qubits: every entry has magnitude 1/4, including the off-X ones
    assert np.allclose(np.abs(rdm.rho), 0.25, atol=1e-12)
    assert not rdm.is_x_form()


def test_rdm_from_moments_decoupled():
    rdm = rdm_from_moments(0.0, SQ3)
    assert np.allclose(rdm.rho, G0_X_ENTRIES, atol=1e-15)


@settings(max_examples=100, deadline=None)
@given(chi=st.floats(0, 3), K1=st.floats(-10, 10))
def test_rdm_from_moments_unit_trace(chi, K1):
    rdm = rdm_from_moments(chi, K1)
    assert np.trace(rdm.rho).real == pytest.approx(1, abs=1e-12)
    assert rdm.is_x_form(0)


@pytest.mark.parametrize(
    "w_c,g", [(1.0, 0.5), (1.0, 0.1), (0.8, 0.3), (1.2, 0.45), (1.0, 1.0), (0.8, 1.8), (1.2, 2.5)]
)
def test_moments_path_equivalence(w_c, g):
    p = ModelParams(1.0, w_c, g)
    sol = transformed_ground(p, auto_cutoff(g / w_c))
    explicit = two_qubit_rdm(sol.state).x_part().rho
    closed = rdm_from_moments(sol.chi, sol.coeffs.K1).rho
    assert np.abs(explicit - closed).max() < 1e-10


@pytest.mark.parametrize("state", STATES)
def test_x_formula_matches_negativity(state):
    rdm = two_qubit_rdm(state)
    assert abs(x_state_entanglement(rdm) - partial_transpose_negativity(rdm)) < 1e-10
    assert abs(x_state_entanglement(rdm.x_part()) - partial_transpose_negativity(rdm.x_part())) < 1e-10
    assert pairwise_entanglement(rdm) == pytest.approx(partial_transpose_negativity(rdm), abs=1e-10)


@settings(max_examples=100, deadline=None)
@given(a=st.floats(0, 0.5), c=st.floats(-1, 1), d=st.floats(-1, 1))
def test_x_formula_matches_negativity_balanced_x_states(a, c, d):
    # every state of the model has r11 = r44 and r22 = r33
    r11 = r44 = a
    r22 = r33 = 0.5 - a
    rho = np.array(
        [[r11, 0, 0, c * r11], [0, r22, d * r22, 0], [0, d * r22, r33, 0], [c * r11, 0, 0, r44]]
    )
    rdm = TwoQubitRDM(rho)
    assert abs(pairwise_entanglement(rdm) - partial_transpose_negativity(rdm)) < 1e-10


def test_x_formula_is_concurrence_not_negativity_when_unbalanced():
    # |ss><ss| / 2 + |Psi+><Psi+| / 2
    rho = np.diag([0, 0.25, 0.25, 0.5])
    rho[1, 2] = rho[2, 1] = 0.25
    rdm = TwoQubitRDM(rho)
    assert pairwise_entanglement(rdm) == pytest.approx(0.5)
    assert partial_transpose_negativity(rdm) == pytest.approx(math.sqrt(2) / 2 - 0.5)


def test_not_x_form_rejected():
    # (|ee> + |es> + |se> - |ss>) / 2 is maximally entangled but its X entries
    # alone describe a separable matrix
    psi = np.array([1, 1, 1, -1]) / 2
    rdm = TwoQubitRDM(np.outer(psi, psi))
    assert partial_transpose_negativity(rdm) == pytest.approx(1)
    with pytest.raises(NotXForm):
        pairwise_entanglement(rdm)


def test_entanglement_zero_at_zero_coupling():
    assert pairwise_entanglement(rdm_from_moments(0.0, SQ3)) == 0
    state = solve_exact(ModelParams(1.0, 1.0, 0.0), 10).state
    assert state_entanglement(state) == pytest.approx(0, abs=1e-14)


def test_small_coupling_entanglement_scaling():
    # both routes give N ~ g^2 / 8 at small g, roughly independent of w_c
    for w_c in (0.8, 1.0, 1.2):
        g = 0.05
        p = ModelParams(1.0, w_c, g)
        ex = solve_exact(p, 30).state
        tr = transformed_ground(p, 30).state
        assert state_entanglement(ex) / g**2 == pytest.approx(0.125, rel=0.03)
        assert state_entanglement(tr) / g**2 == pytest.approx(0.125, rel=0.03)


def test_quadratic_entanglement_formula():
    assert quadratic_entanglement(ModelParams(1.0, 1.0, 0.2)) == pytest.approx(0.0025)


def test_exact_entanglement_rises_peaks_and_decays():
    gs = np.linspace(0, 3, 61)
    vals = []
    for g in gs:
        p = ModelParams(1.0, 1.0, g)
        vals.append(state_entanglement(solve_converged(p, 1e-10, auto_cutoff(g)).state))
    vals = np.array(vals)
    k = int(np.argmax(vals))
    assert 0 < k < len(gs) - 1
    assert np.all(np.diff(vals[: k + 1]) > 0)
    assert np.all(np.diff(vals[k:]) < 0)


def test_fidelity_basic():
    s = STATES[3]
    assert fidelity(s, s) == pytest.approx(1, abs=1e-12)
    e0 = JointState(np.eye(8)[0], 1)
    e1 = JointState(np.eye(8)[5], 1)
    assert fidelity(e0, e1) == 0
    assert fidelity(e0, JointState(np.eye(8)[0] * 1j, 1)) == pytest.approx(1)
    with pytest.raises(DimensionMismatch):
        fidelity(e0, JointState(np.eye(12)[0], 2))


def test_fidelity_resonant_half_coupling():
    p = ModelParams(1.0, 1.0, 0.5)
    ex = solve_converged(p, 1e-10, 30)
    tr = transformed_ground(p, ex.cutoff_used)
    assert fidelity(tr.state, ex.state) > 0.99
