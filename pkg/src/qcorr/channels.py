"""Open-system evolution of two-qubit states under NMR relaxation.

Each qubit relaxes through two independent mechanisms: generalized
amplitude damping toward the thermal state on the longitudinal
timescale T1, and phase damping killing coherences on the transverse
timescale T2. Both are applied in operator-sum form with exact
exponential parameters p(t) = 1 - exp(-t/T1), lambda(t) = 1 - exp(-t/T2)
and gamma = 1/2 - eps/2, eps being the thermal polarization. The scalar
spin-spin coupling between the two nuclei is available as a separate
unitary; Bell-diagonal states are invariant under it.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bloch import SIGMA_Z, BellDiagonalState, BlochRecord, bloch_decompose
from .measures import UNITS_DEVIATION, UNITS_FULL, CorrelationReport, report_from_record

COMPLETENESS_TOL = 1e-12

#: confirmation threshold for a sudden transition: the second difference
#: of d_g at the candidate must exceed this multiple of its median.
TRANSITION_SPIKE_FACTOR = 10.0


@dataclass(frozen=True)
class RelaxationParams:
    """Relaxation times (s), polarization and scalar coupling (Hz).

    Defaults are the chloroform values: hydrogen T1 = 3.57 s, T2 = 1.2 s;
    carbon T1 = 10 s, T2 = 0.19 s; J = 215.1 Hz; eps ~ 1e-5.
    """

    t1_a: float = 3.57
    t2_a: float = 1.2
    t1_b: float = 10.0
    t2_b: float = 0.19
    epsilon: float = 1e-5
    j_coupling: float = 215.1

    def __post_init__(self):
        for name in ("t1_a", "t2_a", "t1_b", "t2_b"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if not 0 < self.epsilon <= 1:
            raise ValueError(f"epsilon must lie in (0, 1], got {self.epsilon}")


@dataclass(frozen=True)
class KrausSet:
    """Operators of one single-qubit channel in operator-sum form."""

    operators: tuple[np.ndarray, ...]

    def completeness_defect(self) -> float:
        """max |sum_k E_k^dag E_k - I|; zero for a trace-preserving set."""
        acc = np.zeros((2, 2), dtype=complex)
        for op in self.operators:
            acc += op.conj().T @ op
        return float(np.max(np.abs(acc - np.eye(2))))


def gad_kraus(p: float, gamma: float) -> KrausSet:
    """Generalized amplitude damping with decay probability p and bias gamma.

    E0 = sqrt(g) diag(1, sqrt(1-p))        E1 = sqrt(g)   sqrt(p) |0><1|
    E2 = sqrt(1-g) diag(sqrt(1-p), 1)      E3 = sqrt(1-g) sqrt(p) |1><0|

    gamma = 1/2 leaves the channel unital; gamma = 1/2 - eps/2 drives the
    qubit toward the eps-polarized thermal state.
    """
    if not 0 <= p <= 1:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    if not 0 <= gamma <= 1:
        raise ValueError(f"gamma must lie in [0, 1], got {gamma}")
    sg, sgbar = np.sqrt(gamma), np.sqrt(1.0 - gamma)
    sp, spbar = np.sqrt(p), np.sqrt(1.0 - p)
    return KrausSet(
        operators=(
            sg * np.array([[1, 0], [0, spbar]], dtype=complex),
            sg * np.array([[0, sp], [0, 0]], dtype=complex),
            sgbar * np.array([[spbar, 0], [0, 1]], dtype=complex),
            sgbar * np.array([[0, 0], [sp, 0]], dtype=complex),
        )
    )


def pd_kraus(lam: float) -> KrausSet:
    """Phase damping: E4 = sqrt(1 - lam/2) I, E5 = sqrt(lam/2) sigma_z.

    Scales coherences by 1 - lam and leaves populations alone.
    """
    if not 0 <= lam <= 1:
        raise ValueError(f"lambda must lie in [0, 1], got {lam}")
    return KrausSet(
        operators=(
            np.sqrt(1.0 - lam / 2.0) * np.eye(2, dtype=complex),
            np.sqrt(lam / 2.0) * SIGMA_Z.astype(complex),
        )
    )


def apply_two_qubit_channel(
    rho: np.ndarray, kraus_a: KrausSet, kraus_b: KrausSet
) -> np.ndarray:
    """Apply one channel per qubit: sum_ij (E_i (x) F_j) rho (E_i (x) F_j)^dag."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a two-qubit state, got shape {rho.shape}")
    for name, ks in (("A", kraus_a), ("B", kraus_b)):
        defect = ks.completeness_defect()
        if defect > COMPLETENESS_TOL:
            raise ValueError(
                f"Kraus set for qubit {name} is not trace preserving "
                f"(completeness defect {defect:.3e})"
            )
    out = np.zeros((4, 4), dtype=complex)
    for ea in kraus_a.operators:
        for eb in kraus_b.operators:
            k = np.kron(ea, eb)
            out += k @ rho @ k.conj().T
    return (out + out.conj().T) / 2.0


def evolve(rho0: np.ndarray, t: float, params: RelaxationParams | None = None) -> np.ndarray:
    """State after relaxing for time t (seconds) from rho0.

    Per qubit, amplitude damping with p = 1 - exp(-t/T1) is followed by
    phase damping with lambda = 1 - exp(-t/T2) (the two orders agree on
    all Bell coefficients; this one is fixed for reproducibility). The
    exponential parameters make the family a semigroup, so evolving to
    each time from t = 0 is exact.
    """
    if t < 0:
        raise ValueError(f"time must be non-negative, got {t}")
    if params is None:
        params = RelaxationParams()
    gamma = 0.5 - params.epsilon / 2.0
    damped = apply_two_qubit_channel(
        rho0,
        gad_kraus(1.0 - np.exp(-t / params.t1_a), gamma),
        gad_kraus(1.0 - np.exp(-t / params.t1_b), gamma),
    )
    return apply_two_qubit_channel(
        damped,
        pd_kraus(1.0 - np.exp(-t / params.t2_a)),
        pd_kraus(1.0 - np.exp(-t / params.t2_b)),
    )


def j_coupling_unitary(j: float, t: float) -> np.ndarray:
    """exp(-i 2 pi J t (sigma_z (x) sigma_z) / 4) for scalar coupling J (Hz)."""
    phase = 2.0 * np.pi * j * t / 4.0
    zz = np.array([1.0, -1.0, -1.0, 1.0])
    return np.diag(np.exp(-1j * phase * zz))


def pseudo_epr_transform(populations) -> np.ndarray:
    """Map a diagonal deviation diag(a, b, g, d) onto its X-form image.

    Output = [[a+g, 0, 0, -a+g], [0, b+d, -b+d, 0],
              [0, -b+d, b+d, 0], [-a+g, 0, 0, a+g]] / 2;
    the trace a+b+g+d is preserved.
    """
    pops = np.asarray(populations, dtype=float)
    if pops.shape != (4,):
        raise ValueError(f"expected 4 populations, got shape {pops.shape}")
    a, b, g, d = pops
    out = np.zeros((4, 4))
    out[0, 0] = out[3, 3] = (a + g) / 2.0
    out[1, 1] = out[2, 2] = (b + d) / 2.0
    out[0, 3] = out[3, 0] = (-a + g) / 2.0
    out[1, 2] = out[2, 1] = (-b + d) / 2.0
    return out


@dataclass
class Trajectory:
    """Time series of an evolving two-qubit state with its measures."""

    times: np.ndarray
    states: list[np.ndarray]
    bell_coeffs: np.ndarray
    reports: list[CorrelationReport] = field(repr=False)


def make_trajectory(
    state0: BellDiagonalState,
    params: RelaxationParams | None = None,
    t_max: float | None = None,
    dt: float | None = None,
    n_points: int = 251,
    include_local_bloch: bool = False,
) -> Trajectory:
    """Evolve a Bell-diagonal state over a uniform time grid.

    The grid is t_i = i * dt for i = 0 .. n_points-1; by default dt is one
    quarter of the scalar-coupling period, 1/(4J), with 251 points. Give
    either t_max (then dt = t_max/(n_points - 1)) or dt, not both. Every
    point is evolved directly from t = 0. For a deviation-mode input the
    extracted Bloch data are divided by eps, so reported measures carry
    eps^2 (d_g, q) and eps (q_n) units.

    ``include_local_bloch`` controls whether the longitudinal local
    polarization that amplitude damping builds up enters the S matrix of
    the reports. Off by default: the reference treatment evaluates the
    measures on the Bell-diagonal correlation part alone, which is what
    makes q_n available along the whole trajectory.
    """
    if n_points < 2:
        raise ValueError(f"n_points must be at least 2, got {n_points}")
    if params is None:
        params = RelaxationParams()
    if t_max is not None and dt is not None:
        raise ValueError("give either t_max or dt, not both")
    if dt is None:
        if t_max is not None:
            if not t_max > 0:
                raise ValueError(f"t_max must be positive, got {t_max}")
            dt = t_max / (n_points - 1)
        else:
            dt = 1.0 / (4.0 * params.j_coupling)
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")

    if state0.mode == "deviation":
        rho0 = state0.density_matrix(epsilon=params.epsilon)
        scale, units = params.epsilon, UNITS_DEVIATION
    else:
        rho0 = state0.density_matrix()
        scale, units = 1.0, UNITS_FULL

    times = np.arange(n_points) * dt
    states: list[np.ndarray] = []
    coeffs = np.empty((n_points, 3))
    reports: list[CorrelationReport] = []
    for i, t in enumerate(times):
        rho_t = evolve(rho0, float(t), params)
        record = bloch_decompose(rho_t, 2)
        x = record.x / scale
        y = record.y / scale
        c = record.C / scale
        coeffs[i] = np.diagonal(c)
        if not include_local_bloch:
            x = np.zeros_like(x)
            y = np.zeros_like(y)
        scaled = BlochRecord(x=x, y=y, C=c)
        states.append(rho_t)
        reports.append(report_from_record(scaled, 2, rho=rho_t, units=units))
    return Trajectory(times=times, states=states, bell_coeffs=coeffs, reports=reports)


@dataclass(frozen=True)
class TransitionPoint:
    """Grid point where the dominant Bell coefficient changes identity."""

    t_star: float
    index: int


def detect_transition(traj: Trajectory) -> TransitionPoint | None:
    """Locate a sudden transition in a trajectory, if any.

    A candidate is a grid point where the argmax of (|c1|, |c2|, |c3|)
    differs from the previous point; switches at the very first step are
    ignored (a tie at t = 0 resolving itself is not a transition). The
    candidate is confirmed when the second difference of d_g next to it
    spikes above TRANSITION_SPIKE_FACTOR times the median second
    difference. Returns the first confirmed point, or None.
    """
    n = len(traj.times)
    if n < 5:
        raise ValueError(f"trajectory must have at least 5 points, got {n}")
    dominant = np.argmax(np.abs(traj.bell_coeffs), axis=1)
    d_g = np.array([r.d_g for r in traj.reports])
    second = d_g[2:] - 2.0 * d_g[1:-1] + d_g[:-2]  # second[k] sits at grid k+1
    median = float(np.median(np.abs(second)))
    for i in range(2, n):
        if dominant[i] == dominant[i - 1]:
            continue
        # the kink lies in (t_{i-1}, t_i): check the second difference at both ends
        spike = abs(second[i - 2])
        if i <= n - 2:
            spike = max(spike, abs(second[i - 1]))
        if spike > TRANSITION_SPIKE_FACTOR * median:
            return TransitionPoint(t_star=float(traj.times[i]), index=i)
    return None


def one_sided_slopes(values, times, index: int) -> tuple[float, float]:
    """(left, right) single-step difference quotients at a grid index."""
    values = np.asarray(values, dtype=float)
    times = np.asarray(times, dtype=float)
    if not 1 <= index <= len(values) - 2:
        raise ValueError(f"index {index} needs one neighbor on each side")
    left = (values[index] - values[index - 1]) / (times[index] - times[index - 1])
    right = (values[index + 1] - values[index]) / (times[index + 1] - times[index])
    return float(left), float(right)
