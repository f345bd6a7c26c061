"""Density-matrix simulation of entanglement generated from classical
correlations by local non-unital noise."""

__version__ = "0.1.0"

from .adversary import AdversaryOutcome, minimize_negativity_2q, minimize_negativity_4q
from .entanglement import (
    WitnessOperator,
    build_witness_abcd,
    expectation,
    negativity,
    witness_from_negative_subspace,
)
from .matrix_core import Bipartition, hermitian_eig, kron, partial_trace, partial_transpose
from .optics import OpticalParams, calibrate_filters, imperfect_protocol, physical_channel
from .protocols import (
    DiagonalInputParams,
    ProtocolResult,
    analytic_negativity_offdiag,
    commutator_deviation,
    four_qubit_protocol,
    noise_block,
    rho_prime_ab,
    two_qubit_protocol,
)
from .quantum_objects import (
    CNOT,
    H,
    DensityMatrix,
    Gate,
    KrausChannel,
    amplitude_damping,
    apply_channel,
    apply_gate,
    is_unital,
    su2_gate,
)

__all__ = [
    "AdversaryOutcome",
    "amplitude_damping",
    "analytic_negativity_offdiag",
    "apply_channel",
    "apply_gate",
    "Bipartition",
    "build_witness_abcd",
    "calibrate_filters",
    "CNOT",
    "commutator_deviation",
    "DensityMatrix",
    "DiagonalInputParams",
    "expectation",
    "four_qubit_protocol",
    "Gate",
    "H",
    "hermitian_eig",
    "imperfect_protocol",
    "is_unital",
    "KrausChannel",
    "kron",
    "minimize_negativity_2q",
    "minimize_negativity_4q",
    "negativity",
    "noise_block",
    "OpticalParams",
    "partial_trace",
    "partial_transpose",
    "physical_channel",
    "ProtocolResult",
    "rho_prime_ab",
    "su2_gate",
    "two_qubit_protocol",
    "witness_from_negative_subspace",
    "WitnessOperator",
]
