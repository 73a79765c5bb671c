"""States of a qubit-qudit (2 x d) system in matrix and Bloch form.

The Bloch data of a density matrix rho on C^2 (x) C^d are the local
vectors x_nu = tr[rho (sigma_nu (x) I_d)], y_lam = tr[rho (I_2 (x) tau_lam)]
and the correlation matrix c_{nu,lam} = tr[rho (sigma_nu (x) tau_lam)],
where sigma are the Pauli matrices and tau the generalized Gell-Mann
generators normalized to tr[tau_a tau_b] = 2 delta_ab. With that
normalization the expansion

    rho = I/(2d) + sum_nu x_nu sigma_nu (x) I_d / (2d)
        + sum_lam y_lam I_2 (x) tau_lam / 4
        + sum_{nu,lam} c_{nu,lam} sigma_nu (x) tau_lam / 4

makes decomposition and composition exact mutual inverses (for d = 2 all
prefactors reduce to the familiar 1/4).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .eigen import hermitian_eigenvalues

TRACE_TOL = 1e-12
HERMITICITY_TOL = 1e-12
PSD_TOL = -1e-10

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)
for _m in PAULIS:
    _m.setflags(write=False)


class InvalidStateError(ValueError):
    """A matrix fails the density-matrix requirements.

    Carries ``min_eigenvalue`` when positivity is what failed, so callers
    can report how far below zero the spectrum dips.
    """

    def __init__(self, message: str, min_eigenvalue: float | None = None):
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue


@dataclass(frozen=True)
class OperatorBasis:
    """Traceless Hermitian generators for one subsystem, tr[t_a t_b] = 2 d_ab."""

    d: int
    generators: tuple[np.ndarray, ...]


@dataclass(frozen=True)
class BlochRecord:
    """Bloch data (x, y, C) of a 2 x d state."""

    x: np.ndarray
    y: np.ndarray
    C: np.ndarray

    @property
    def d(self) -> int:
        return int(round(np.sqrt(len(self.y) + 1)))


def pauli_basis() -> OperatorBasis:
    """The Pauli matrices (sigma_x, sigma_y, sigma_z)."""
    return OperatorBasis(d=2, generators=PAULIS)


def gellmann_basis(d: int) -> OperatorBasis:
    """Generalized Gell-Mann generators of SU(d), tr[t_a t_b] = 2 delta_ab.

    Ordered as the d(d-1)/2 symmetric pair operators, then the
    antisymmetric ones, then the d-1 diagonal ones; for d = 2 this
    reproduces (sigma_x, sigma_y, sigma_z) exactly.
    """
    if d < 2:
        raise ValueError(f"subsystem dimension must be at least 2, got {d}")
    gens: list[np.ndarray] = []
    for j in range(d):
        for k in range(j + 1, d):
            m = np.zeros((d, d), dtype=complex)
            m[j, k] = 1
            m[k, j] = 1
            gens.append(m)
    for j in range(d):
        for k in range(j + 1, d):
            m = np.zeros((d, d), dtype=complex)
            m[j, k] = -1j
            m[k, j] = 1j
            gens.append(m)
    for l in range(1, d):
        m = np.zeros((d, d), dtype=complex)
        for j in range(l):
            m[j, j] = 1
        m[l, l] = -l
        gens.append(np.sqrt(2.0 / (l * (l + 1))) * m)
    return OperatorBasis(d=d, generators=tuple(gens))


# Stacked product operators per d, reused by decompose/compose:
# 3 of sigma_nu (x) I, d^2-1 of I (x) tau_lam, then 3(d^2-1) of
# sigma_nu (x) tau_lam in row-major (nu, lam) order.
_OP_STACKS: dict[int, np.ndarray] = {}


def _operator_stack(d: int) -> np.ndarray:
    stack = _OP_STACKS.get(d)
    if stack is None:
        taus = gellmann_basis(d).generators
        eye_d = np.eye(d, dtype=complex)
        eye_2 = np.eye(2, dtype=complex)
        ops = [np.kron(s, eye_d) for s in PAULIS]
        ops += [np.kron(eye_2, t) for t in taus]
        ops += [np.kron(s, t) for s in PAULIS for t in taus]
        stack = np.array(ops)
        stack.setflags(write=False)
        _OP_STACKS[d] = stack
    return stack


def _infer_d(rho: np.ndarray, d: int | None) -> int:
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {rho.shape}")
    if d is None:
        if rho.shape[0] % 2:
            raise ValueError(f"total dimension {rho.shape[0]} is not 2*d")
        d = rho.shape[0] // 2
    if rho.shape[0] != 2 * d:
        raise ValueError(f"state of dimension {rho.shape[0]} does not match 2*d with d={d}")
    if d < 2:
        raise ValueError(f"subsystem dimension must be at least 2, got {d}")
    return d


def bloch_decompose(rho: np.ndarray, d: int | None = None) -> BlochRecord:
    """Extract the Bloch data (x, y, C) of a 2 x d state."""
    rho = np.asarray(rho, dtype=complex)
    d = _infer_d(rho, d)
    vals = np.einsum("aij,ji->a", _operator_stack(d), rho).real
    nb = d * d - 1
    return BlochRecord(
        x=vals[:3].copy(),
        y=vals[3 : 3 + nb].copy(),
        C=vals[3 + nb :].reshape(3, nb).copy(),
    )


def bloch_compose(record: BlochRecord, d: int | None = None) -> np.ndarray:
    """Rebuild the density matrix from Bloch data; inverse of bloch_decompose."""
    if d is None:
        d = record.d
    nb = d * d - 1
    if record.x.shape != (3,) or record.y.shape != (nb,) or record.C.shape != (3, nb):
        raise ValueError(
            f"record shapes {record.x.shape}/{record.y.shape}/{record.C.shape} "
            f"do not match d={d}"
        )
    coeffs = np.concatenate(
        [record.x / (2.0 * d), record.y / 4.0, record.C.reshape(-1) / 4.0]
    )
    rho = np.tensordot(coeffs, _operator_stack(d), axes=1)
    rho += np.eye(2 * d, dtype=complex) / (2.0 * d)
    return rho


def check_density_matrix(rho: np.ndarray, name: str = "state") -> None:
    """Raise InvalidStateError unless rho is Hermitian, unit trace and PSD."""
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise InvalidStateError(f"{name}: expected a square matrix, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > HERMITICITY_TOL:
        raise InvalidStateError(f"{name}: matrix is not Hermitian within {HERMITICITY_TOL}")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > TRACE_TOL:
        raise InvalidStateError(f"{name}: trace {tr.real!r} differs from 1 beyond {TRACE_TOL}")
    smallest = float(hermitian_eigenvalues(rho)[-1])
    if smallest < PSD_TOL:
        raise InvalidStateError(
            f"{name}: smallest eigenvalue {smallest!r} is below {PSD_TOL}",
            min_eigenvalue=smallest,
        )


def _as_generator(seed: int | np.random.Generator) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_density_matrix(
    dim: int, rank: int | None = None, seed: int | np.random.Generator = 0
) -> np.ndarray:
    """Random density matrix G G^dag / tr[G G^dag] with Ginibre G (dim x rank).

    Deterministic for a fixed integer seed; a Generator may be passed
    instead to draw several states from one stream.
    """
    if rank is None:
        rank = dim
    if not 1 <= rank <= dim:
        raise ValueError(f"rank must lie in [1, {dim}], got {rank}")
    rng = _as_generator(seed)
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    rho = g @ g.conj().T
    rho /= np.trace(rho).real
    return (rho + rho.conj().T) / 2.0


def random_unitary(dim: int, seed: int | np.random.Generator = 0) -> np.ndarray:
    """Haar-random unitary via phase-fixed QR of a Ginibre matrix."""
    rng = _as_generator(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    diag = np.diagonal(r)
    return q * (diag / np.abs(diag))


@dataclass(frozen=True)
class BellDiagonalState:
    """Two-qubit state diagonal in the Bell basis, rho = (I + sum_i c_i s_i x s_i)/4.

    In ``full`` mode the coefficients must keep all four Bell populations
    non-negative (the tetrahedron constraint). In ``deviation`` mode the
    coefficients are understood in units of the thermal polarization and
    carry no positivity constraint of their own; the physical state is
    I/4 + eps * deviation_matrix() for small eps.
    """

    c1: float
    c2: float
    c3: float
    mode: str = "full"

    def __post_init__(self):
        if self.mode not in ("full", "deviation"):
            raise ValueError(f"mode must be 'full' or 'deviation', got {self.mode!r}")
        if self.mode == "full":
            smallest = min(self.populations())
            if smallest < PSD_TOL:
                raise InvalidStateError(
                    f"Bell coefficients ({self.c1}, {self.c2}, {self.c3}) violate "
                    f"the tetrahedron constraint: population {smallest!r}",
                    min_eigenvalue=smallest,
                )

    @property
    def coefficients(self) -> np.ndarray:
        return np.array([self.c1, self.c2, self.c3])

    def populations(self) -> tuple[float, float, float, float]:
        """Eigenvalues of the full-state matrix (the four Bell populations)."""
        c1, c2, c3 = self.c1, self.c2, self.c3
        return (
            (1 - c1 - c2 - c3) / 4.0,
            (1 - c1 + c2 + c3) / 4.0,
            (1 + c1 - c2 + c3) / 4.0,
            (1 + c1 + c2 - c3) / 4.0,
        )

    def deviation_matrix(self) -> np.ndarray:
        """The traceless part sum_i c_i sigma_i (x) sigma_i / 4."""
        out = np.zeros((4, 4), dtype=complex)
        for c, s in zip((self.c1, self.c2, self.c3), PAULIS):
            out += c * np.kron(s, s)
        return out / 4.0

    def density_matrix(self, epsilon: float | None = None) -> np.ndarray:
        """The physical 4x4 state; deviation mode requires epsilon."""
        if self.mode == "full":
            return np.eye(4, dtype=complex) / 4.0 + self.deviation_matrix()
        if epsilon is None:
            raise ValueError("epsilon is required to compose a deviation-mode state")
        return np.eye(4, dtype=complex) / 4.0 + epsilon * self.deviation_matrix()


@dataclass(frozen=True)
class DeviationState:
    """High-temperature state I/4 + epsilon * delta with traceless Hermitian delta.

    epsilon is the (dimensionless) ratio of magnetic to thermal energy,
    of order 1e-5 for room-temperature nuclear spins; its microscopic
    constituents (Larmor frequency, Boltzmann constant, temperature) are
    never needed individually, only the ratio enters.
    """

    epsilon: float
    delta: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        delta = np.asarray(self.delta, dtype=complex)
        if delta.shape != (4, 4):
            raise ValueError(f"delta must be 4x4, got shape {delta.shape}")
        if abs(complex(np.trace(delta))) > TRACE_TOL:
            raise ValueError("delta is not traceless within 1e-12")
        if np.max(np.abs(delta - delta.conj().T)) > HERMITICITY_TOL:
            raise ValueError("delta is not Hermitian within 1e-12")
        object.__setattr__(self, "delta", delta)

    def compose(self) -> np.ndarray:
        """I/4 + epsilon*delta, validated as a density matrix."""
        rho = np.eye(4, dtype=complex) / 4.0 + self.epsilon * self.delta
        rho = (rho + rho.conj().T) / 2.0
        check_density_matrix(rho, name="deviation state")
        return rho
