import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_bell_state
from qcorr import (
    BellDiagonalState,
    KrausSet,
    RelaxationParams,
    apply_two_qubit_channel,
    bloch_decompose,
    check_density_matrix,
    evolve,
    gad_kraus,
    j_coupling_unitary,
    pd_kraus,
    pseudo_epr_transform,
    random_density_matrix,
)


def bell_phi_plus():
    phi = np.zeros(4, dtype=complex)
    phi[0] = phi[3] = 1 / np.sqrt(2)
    return np.outer(phi, phi.conj())


def apply_single(rho, kraus):
    return sum(op @ rho @ op.conj().T for op in kraus.operators)


def test_relaxation_defaults():
    p = RelaxationParams()
    assert (p.t1_a, p.t2_a, p.t1_b, p.t2_b) == (3.57, 1.2, 10.0, 0.19)
    assert p.j_coupling == 215.1
    assert p.epsilon == 1e-5


def test_relaxation_validation():
    with pytest.raises(ValueError):
        RelaxationParams(t1_a=0.0)
    with pytest.raises(ValueError):
        RelaxationParams(epsilon=0.0)
    with pytest.raises(ValueError):
        RelaxationParams(epsilon=1.5)


def test_gad_identity_at_p_zero():
    rho = random_density_matrix(2, seed=1)
    out = apply_single(rho, gad_kraus(0.0, 0.3))
    assert np.max(np.abs(out - rho)) <= 1e-15


def test_gad_full_decay_unbiased_reaches_maximally_mixed():
    rng = np.random.default_rng(2)
    for _ in range(10):
        rho = random_density_matrix(2, seed=rng)
        out = apply_single(rho, gad_kraus(1.0, 0.5))
        assert np.max(np.abs(out - np.eye(2) / 2.0)) <= 1e-15


@given(st.floats(0, 1), st.floats(0, 1))
@settings(max_examples=100)
def test_gad_completeness(p, gamma):
    assert gad_kraus(p, gamma).completeness_defect() <= 1e-12


def test_gad_parameter_range():
    with pytest.raises(ValueError):
        gad_kraus(-0.1, 0.5)
    with pytest.raises(ValueError):
        gad_kraus(0.5, 1.1)


def test_pd_identity_and_full_dephasing():
    rho = random_density_matrix(2, seed=3)
    assert np.max(np.abs(apply_single(rho, pd_kraus(0.0)) - rho)) <= 1e-15
    out = apply_single(rho, pd_kraus(1.0))
    assert abs(out[0, 1]) <= 1e-15  # (1 - lam/2) r01 - (lam/2) r01 = 0 at lam = 1
    assert out[0, 0] == pytest.approx(rho[0, 0].real)


@given(st.floats(0, 1))
@settings(max_examples=60)
def test_pd_coherence_scaling(lam):
    rho = random_density_matrix(2, seed=4)
    out = apply_single(rho, pd_kraus(lam))
    assert out[0, 1] == pytest.approx((1.0 - lam) * rho[0, 1], abs=1e-14)
    assert pd_kraus(lam).completeness_defect() <= 1e-12


def test_pd_parameter_range():
    with pytest.raises(ValueError):
        pd_kraus(1.2)


def test_apply_two_qubit_identity_channels():
    rho = random_density_matrix(4, seed=5)
    ident = KrausSet(operators=(np.eye(2, dtype=complex),))
    assert np.max(np.abs(apply_two_qubit_channel(rho, ident, ident) - rho)) <= 1e-15


def test_apply_two_qubit_rejects_incomplete_sets():
    broken = KrausSet(operators=(0.5 * np.eye(2, dtype=complex),))
    with pytest.raises(ValueError, match="trace preserving"):
        apply_two_qubit_channel(np.eye(4) / 4.0, broken, broken)


def test_pd_on_both_qubits_scales_transverse_coefficients():
    lam_a, lam_b = 0.3, 0.7
    out = apply_two_qubit_channel(bell_phi_plus(), pd_kraus(lam_a), pd_kraus(lam_b))
    rec = bloch_decompose(out)
    factor = (1 - lam_a) * (1 - lam_b)
    assert rec.C[0, 0] == pytest.approx(factor * 1.0, abs=1e-14)
    assert rec.C[1, 1] == pytest.approx(factor * -1.0, abs=1e-14)
    assert rec.C[2, 2] == pytest.approx(1.0, abs=1e-14)


def test_gad_on_both_qubits_fixed_point():
    rho = random_density_matrix(4, seed=6)
    out = apply_two_qubit_channel(rho, gad_kraus(1.0, 0.5), gad_kraus(1.0, 0.5))
    assert np.max(np.abs(out - np.eye(4) / 4.0)) <= 1e-14


def test_evolve_identity_at_t_zero():
    rho = BellDiagonalState(0.4, -0.2, 0.3).density_matrix()
    assert np.max(np.abs(evolve(rho, 0.0) - rho)) <= 1e-15


def test_evolve_rejects_negative_time():
    with pytest.raises(ValueError):
        evolve(np.eye(4) / 4.0, -0.1)


def test_evolve_preserves_bell_diagonal_structure():
    params = RelaxationParams()
    rho0 = BellDiagonalState(0.5, -0.06, 0.24, mode="deviation").density_matrix(
        params.epsilon
    )
    for t in (0.01, 0.1, 0.5, 2.0):
        rec = bloch_decompose(evolve(rho0, t, params))
        off = rec.C - np.diag(np.diagonal(rec.C))
        assert np.max(np.abs(off)) <= 1e-12
        # transverse local components stay zero; a z component of order eps
        # builds up from the damping bias
        assert np.max(np.abs(rec.x[:2])) <= 1e-10
        assert np.max(np.abs(rec.y[:2])) <= 1e-10
        assert abs(rec.x[2]) <= 2 * params.epsilon
        assert abs(rec.y[2]) <= 2 * params.epsilon


def test_evolve_long_time_fixed_point():
    params = RelaxationParams()
    rho0 = BellDiagonalState(0.5, -0.06, 0.24, mode="deviation").density_matrix(
        params.epsilon
    )
    out = evolve(rho0, 100.0 * max(params.t1_a, params.t1_b), params)
    single = (np.eye(2, dtype=complex) - params.epsilon * np.diag([1.0, -1.0])) / 2.0
    assert np.max(np.abs(out - np.kron(single, single))) <= 1e-6


def test_evolve_semigroup_property():
    params = RelaxationParams()
    rho0 = BellDiagonalState(0.5, -0.06, 0.24, mode="deviation").density_matrix(
        params.epsilon
    )
    onego = evolve(rho0, 0.7, params)
    twogo = evolve(evolve(rho0, 0.3, params), 0.4, params)
    assert np.max(np.abs(onego - twogo)) <= 1e-9


def test_evolve_outputs_are_states():
    rng = np.random.default_rng(9)
    params = RelaxationParams()
    for _ in range(10):
        rho = random_density_matrix(4, seed=rng)
        check_density_matrix(evolve(rho, float(rng.uniform(0, 3)), params))


def test_j_coupling_unitary_basics():
    assert np.max(np.abs(j_coupling_unitary(215.1, 0.0) - np.eye(4))) == 0
    u = j_coupling_unitary(215.1, 0.0123)
    assert np.max(np.abs(u @ u.conj().T - np.eye(4))) <= 1e-15


def test_j_coupling_half_period_phases():
    j = 215.1
    u = j_coupling_unitary(j, 1.0 / (2.0 * j))
    want = np.diag(np.exp(-1j * np.pi / 4 * np.array([1.0, -1.0, -1.0, 1.0])))
    assert np.max(np.abs(u - want)) <= 1e-15


def test_j_coupling_leaves_bell_diagonal_states_invariant():
    rng = np.random.default_rng(10)
    j = 215.1
    for _ in range(25):
        rho = random_bell_state(rng).density_matrix()
        for t in (1.0 / (4 * j), 3.0 / (4 * j), 0.37):
            u = j_coupling_unitary(j, t)
            assert np.max(np.abs(u @ rho @ u.conj().T - rho)) <= 1e-12


def test_pseudo_epr_uniform_populations():
    assert np.array_equal(pseudo_epr_transform([1, 1, 1, 1]), np.eye(4))


def test_pseudo_epr_single_population():
    want = 0.5 * np.array(
        [[1, 0, 0, -1], [0, 0, 0, 0], [0, 0, 0, 0], [-1, 0, 0, 1]], dtype=float
    )
    assert np.array_equal(pseudo_epr_transform([1, 0, 0, 0]), want)


@given(st.lists(st.floats(-1, 1), min_size=4, max_size=4))
@settings(max_examples=60)
def test_pseudo_epr_preserves_trace(pops):
    out = pseudo_epr_transform(pops)
    assert np.trace(out) == pytest.approx(sum(pops), abs=1e-12)
    assert np.max(np.abs(out - out.T)) == 0


def test_pseudo_epr_matches_bell_deviation_form():
    # zero-sum populations produce exactly the X-shaped deviation of a
    # Bell-diagonal description with c3 = 2(a + g), c1 -+ c2 = 2(g - a), 2(d - b)
    pops = np.array([0.3, -0.1, 0.05, -0.25])
    out = pseudo_epr_transform(pops)
    c3 = 2 * (pops[0] + pops[2])
    c1 = (pops[3] - pops[1]) + (pops[2] - pops[0])
    c2 = (pops[3] - pops[1]) - (pops[2] - pops[0])
    want = BellDiagonalState(c1, c2, c3, mode="deviation").deviation_matrix()
    assert np.max(np.abs(out - want)) <= 1e-15
