"""Quantum-correlation laboratory for qubit-qudit (2 x d) states.

Measures (geometric discord in closed and spectral form, its lower
bound, negativity of quantumness, entanglement negativity), a
tomography-free direct-measurement protocol built from local rotations
and a CNOT, and NMR-style relaxation dynamics with sudden-transition
detection.
"""
from .bloch import (
    BellDiagonalState,
    BlochRecord,
    DeviationState,
    InvalidStateError,
    OperatorBasis,
    bloch_compose,
    bloch_decompose,
    check_density_matrix,
    gellmann_basis,
    pauli_basis,
    random_density_matrix,
    random_unitary,
)
from .channels import (
    KrausSet,
    RelaxationParams,
    Trajectory,
    TransitionPoint,
    apply_two_qubit_channel,
    detect_transition,
    evolve,
    gad_kraus,
    j_coupling_unitary,
    make_trajectory,
    one_sided_slopes,
    pd_kraus,
    pseudo_epr_transform,
)
from .eigen import hermitian_eigenvalues, sym3_eigenvalues
from .measures import (
    CorrelationReport,
    full_report,
    geometric_discord_closed,
    geometric_discord_eig,
    is_bell_diagonal,
    negativity,
    negativity_of_quantumness_bell,
    partial_transpose,
    q_lower_bound,
    report_from_record,
    s_matrix,
)
from .protocol import (
    LOCAL_ROTATIONS,
    ROTATION_TABLE,
    MeasurementRecord,
    RotationSpec,
    cnot_gate,
    direct_correlation,
    direct_local,
    measurement_budget,
    rotation_gate,
    run_direct_protocol,
)

__version__ = "0.1.0"

__all__ = [
    "BellDiagonalState",
    "BlochRecord",
    "CorrelationReport",
    "DeviationState",
    "InvalidStateError",
    "KrausSet",
    "LOCAL_ROTATIONS",
    "MeasurementRecord",
    "OperatorBasis",
    "ROTATION_TABLE",
    "RelaxationParams",
    "RotationSpec",
    "Trajectory",
    "TransitionPoint",
    "apply_two_qubit_channel",
    "bloch_compose",
    "bloch_decompose",
    "check_density_matrix",
    "cnot_gate",
    "detect_transition",
    "direct_correlation",
    "direct_local",
    "evolve",
    "full_report",
    "gad_kraus",
    "gellmann_basis",
    "geometric_discord_closed",
    "geometric_discord_eig",
    "hermitian_eigenvalues",
    "is_bell_diagonal",
    "j_coupling_unitary",
    "make_trajectory",
    "measurement_budget",
    "negativity",
    "negativity_of_quantumness_bell",
    "one_sided_slopes",
    "partial_transpose",
    "pauli_basis",
    "pd_kraus",
    "pseudo_epr_transform",
    "q_lower_bound",
    "random_density_matrix",
    "random_unitary",
    "report_from_record",
    "rotation_gate",
    "run_direct_protocol",
    "s_matrix",
    "sym3_eigenvalues",
]
