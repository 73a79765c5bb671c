import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcorr import hermitian_eigenvalues, sym3_eigenvalues


def test_sym3_identity():
    assert np.allclose(sym3_eigenvalues(np.eye(3)), [1.0, 1.0, 1.0], atol=0)


def test_sym3_diagonal_is_exact():
    got = sym3_eigenvalues(np.diag([0.0625, 0.0009, 0.0144]))
    assert got.tolist() == [0.0625, 0.0144, 0.0009]


def test_sym3_rejects_asymmetric():
    m = np.eye(3)
    m[0, 1] = 1e-6
    with pytest.raises(ValueError, match="symmetric"):
        sym3_eigenvalues(m)


def test_sym3_rejects_wrong_shape():
    with pytest.raises(ValueError, match="3x3"):
        sym3_eigenvalues(np.eye(4))


def test_sym3_matches_jacobi_on_random_matrices():
    rng = np.random.default_rng(42)
    worst = 0.0
    for _ in range(10_000):
        a = rng.standard_normal((3, 3))
        m = (a + a.T) / 2.0
        gap = np.max(np.abs(sym3_eigenvalues(m) - hermitian_eigenvalues(m)))
        worst = max(worst, gap)
    assert worst <= 1e-10


@given(st.lists(st.floats(-1e3, 1e3), min_size=6, max_size=6))
def test_sym3_descending_and_trace(entries):
    m = np.zeros((3, 3))
    m[np.triu_indices(3)] = entries
    m = (m + m.T) - np.diag(np.diagonal(m))
    eigs = sym3_eigenvalues(m)
    assert eigs[0] >= eigs[1] >= eigs[2]
    assert abs(np.sum(eigs) - np.trace(m)) <= 1e-9 * max(1.0, abs(np.trace(m)))


def test_jacobi_identity():
    assert np.allclose(hermitian_eigenvalues(np.eye(4)), np.ones(4), atol=0)


def test_jacobi_rank_one_projector():
    phi = np.zeros(4, dtype=complex)
    phi[0] = phi[3] = 1 / np.sqrt(2)
    eigs = hermitian_eigenvalues(np.outer(phi, phi.conj()))
    assert np.allclose(eigs, [1, 0, 0, 0], atol=1e-14)


def test_jacobi_partial_transpose_of_bell_state():
    # PT of the |00>+|11> projector has the hand-computable spectrum
    # (1/2, 1/2, 1/2, -1/2): char. poly (x - 1/2)^3 (x + 1/2).
    phi = np.zeros(4, dtype=complex)
    phi[0] = phi[3] = 1 / np.sqrt(2)
    rho = np.outer(phi, phi.conj())
    pt = rho.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)
    assert np.allclose(hermitian_eigenvalues(pt), [0.5, 0.5, 0.5, -0.5], atol=1e-14)


def test_jacobi_matches_numpy_up_to_dim_16():
    rng = np.random.default_rng(7)
    for _ in range(300):
        n = int(rng.integers(1, 17))
        g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        h = (g + g.conj().T) / 2.0
        want = np.sort(np.linalg.eigvalsh(h))[::-1]
        assert np.max(np.abs(hermitian_eigenvalues(h) - want)) <= 1e-10


def test_jacobi_eigenvalue_sum_is_trace():
    rng = np.random.default_rng(11)
    for _ in range(100):
        g = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
        h = (g + g.conj().T) / 2.0
        assert abs(np.sum(hermitian_eigenvalues(h)) - np.trace(h).real) <= 1e-10


def test_jacobi_rejects_non_hermitian():
    m = np.eye(3, dtype=complex)
    m[0, 1] = 1e-6
    with pytest.raises(ValueError, match="Hermitian"):
        hermitian_eigenvalues(m)


def test_jacobi_rejects_oversized():
    with pytest.raises(ValueError, match="maximum"):
        hermitian_eigenvalues(np.eye(65))
