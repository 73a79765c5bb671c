import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcorr import (
    BellDiagonalState,
    ROTATION_TABLE,
    bloch_decompose,
    cnot_gate,
    direct_correlation,
    direct_local,
    geometric_discord_closed,
    measurement_budget,
    q_lower_bound,
    random_density_matrix,
    rotation_gate,
    run_direct_protocol,
    s_matrix,
)


def bell_phi_plus():
    phi = np.zeros(4, dtype=complex)
    phi[0] = phi[3] = 1 / np.sqrt(2)
    return np.outer(phi, phi.conj())


def test_rotation_gate_zero_angle():
    assert np.allclose(rotation_gate("z", 0.0), np.eye(2), atol=0)


def test_rotation_gate_pi_about_y_flips():
    ket1 = rotation_gate("y", np.pi) @ np.array([1.0, 0.0], dtype=complex)
    assert abs(abs(ket1[1]) - 1.0) <= 1e-15
    assert abs(ket1[0]) <= 1e-15


@given(st.sampled_from("xyz"), st.floats(-2 * np.pi, 2 * np.pi))
@settings(max_examples=60)
def test_rotation_gate_unitarity(axis, angle):
    u = rotation_gate(axis, angle)
    assert np.max(np.abs(u @ u.conj().T - np.eye(2))) <= 1e-12


def test_rotation_gate_rejects_bad_axis():
    with pytest.raises(ValueError):
        rotation_gate("w", 0.1)


def test_rotation_convention_direction():
    # pins the handedness: conjugating sigma_y by a quarter turn about x
    # (in the state-transformation direction U rho U^dag) yields sigma_z
    from qcorr.bloch import SIGMA_Y, SIGMA_Z

    u = rotation_gate("x", np.pi / 2)
    assert np.max(np.abs(u @ SIGMA_Y @ u.conj().T - SIGMA_Z)) <= 1e-15


def test_cnot_truth_table():
    k = cnot_gate()
    basis = np.eye(4, dtype=complex)
    assert np.allclose(k @ basis[:, 2], basis[:, 3], atol=0)  # |10> -> |11>
    assert np.allclose(k @ basis[:, 3], basis[:, 2], atol=0)
    assert np.allclose(k @ basis[:, 0], basis[:, 0], atol=0)
    assert np.allclose(k @ k, np.eye(4), atol=0)


def test_cnot_builds_bell_state():
    h = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
    ket = cnot_gate() @ np.kron(h, np.eye(2)) @ np.eye(4, dtype=complex)[:, 0]
    phi = np.zeros(4, dtype=complex)
    phi[0] = phi[3] = 1 / np.sqrt(2)
    assert np.max(np.abs(ket - phi)) <= 1e-15


def test_direct_correlation_bell_state():
    assert direct_correlation(bell_phi_plus(), 1, 1) == pytest.approx(1.0, abs=1e-12)


def test_direct_correlation_computational_state():
    ket = np.zeros(4, dtype=complex)
    ket[0] = 1.0
    assert direct_correlation(np.outer(ket, ket.conj()), 3, 3) == pytest.approx(1.0, abs=1e-12)


def test_direct_correlation_prepared_sign():
    # the (2, 2) readout reproduces the prepared sign of the second coefficient
    eps = 1e-5
    rho = BellDiagonalState(0.5, -0.06, 0.24, mode="deviation").density_matrix(eps)
    got = direct_correlation(rho, 2, 2)
    want = bloch_decompose(rho).C[1, 1]
    assert got == pytest.approx(want, abs=1e-12)
    assert got == pytest.approx(-0.06 * eps, abs=1e-12)


def test_direct_correlation_index_validation():
    with pytest.raises(ValueError):
        direct_correlation(bell_phi_plus(), 0, 1)
    with pytest.raises(ValueError):
        direct_correlation(bell_phi_plus(), 1, 4)


def test_direct_readouts_match_decomposition_everywhere():
    rng = np.random.default_rng(13)
    for _ in range(150):
        rho = random_density_matrix(4, seed=rng)
        rec = bloch_decompose(rho)
        for nu in (1, 2, 3):
            assert abs(direct_local(rho, nu) - rec.x[nu - 1]) <= 1e-12
            for lam in (1, 2, 3):
                got = direct_correlation(rho, nu, lam)
                assert abs(got - rec.C[nu - 1, lam - 1]) <= 1e-12


def test_direct_local_trivial_cases():
    ket = np.zeros(4, dtype=complex)
    ket[0] = 1.0
    assert direct_local(np.outer(ket, ket.conj()), 3) == pytest.approx(1.0, abs=1e-12)
    rho = BellDiagonalState(0.4, 0.3, -0.2).density_matrix()
    for nu in (1, 2, 3):
        assert abs(direct_local(rho, nu)) <= 1e-12


def test_table_covers_all_pairs_and_gates_are_unitary():
    assert set(ROTATION_TABLE) == {(n, l) for n in (1, 2, 3) for l in (1, 2, 3)}
    for entry in ROTATION_TABLE.values():
        u = np.kron(
            rotation_gate(entry.axis_a, entry.angle), rotation_gate(entry.axis_b, entry.angle)
        )
        u = cnot_gate() @ u
        assert np.max(np.abs(u @ u.conj().T - np.eye(4))) <= 1e-12


def test_protocol_exact_mode_reproduces_s_matrix():
    rng = np.random.default_rng(19)
    for _ in range(30):
        rho = random_density_matrix(4, seed=rng)
        record = run_direct_protocol(rho)
        assert record.readout_count == 12
        assert record.shots is None
        s_direct = s_matrix(record.to_bloch_record())
        s_tomo = s_matrix(bloch_decompose(rho))
        assert np.max(np.abs(s_direct - s_tomo)) <= 1e-12


def test_protocol_measures_match_tomography():
    rho = random_density_matrix(4, seed=23)
    rec = run_direct_protocol(rho).to_bloch_record()
    tomo = bloch_decompose(rho)
    s_p, s_t = s_matrix(rec), s_matrix(tomo)
    assert abs(geometric_discord_closed(s_p)[0] - geometric_discord_closed(s_t)[0]) <= 1e-10
    assert abs(q_lower_bound(s_p) - q_lower_bound(s_t)) <= 1e-10


def test_protocol_shot_mode_deterministic():
    rho = random_density_matrix(4, seed=29)
    a = run_direct_protocol(rho, shots=1000, seed=42)
    b = run_direct_protocol(rho, shots=1000, seed=42)
    assert np.array_equal(a.c_est, b.c_est)
    assert np.array_equal(a.x_est, b.x_est)
    c = run_direct_protocol(rho, shots=1000, seed=43)
    assert not np.array_equal(a.c_est, c.c_est)


def test_protocol_shot_mode_bell_state_concentration():
    # <sigma_x sigma_x> = 1 exactly, so every simulated outcome is +1
    record = run_direct_protocol(bell_phi_plus(), shots=1_000_000, seed=1)
    assert abs(record.c_est[0, 0] - 1.0) <= 5e-3


def test_protocol_shot_error_scales_with_shots():
    rho = BellDiagonalState(0.5, -0.3, 0.2).density_matrix()
    exact = run_direct_protocol(rho).c_est

    def rms(shots):
        errs = []
        for seed in range(12):
            est = run_direct_protocol(rho, shots=shots, seed=seed).c_est
            errs.append((est - exact).ravel())
        return float(np.sqrt(np.mean(np.concatenate(errs) ** 2)))

    ratio = rms(40_000) / rms(10_000)
    # quadrupling the shots should halve the error, up to sampling noise
    assert 0.35 <= ratio <= 0.65


def test_protocol_rejects_zero_shots():
    with pytest.raises(ValueError):
        run_direct_protocol(bell_phi_plus(), shots=0)


def test_measurement_budget():
    assert measurement_budget(2) == (12, 15)
    assert measurement_budget(3) == (27, 35)
    assert measurement_budget(10) == (300, 399)
    with pytest.raises(ValueError):
        measurement_budget(1)
