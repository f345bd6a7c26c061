"""Two- and four-qubit entanglement-from-noise circuits and their closed forms.

Register layout: the two-qubit scheme uses (A, C) = qubits (0, 1); the
four-qubit scheme uses (A, B, C, D) = qubits (0, 1, 2, 3).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .entanglement import build_witness_abcd, expectation, negativity
from .errors import NumericalMismatch, OutOfRange, UnsupportedDim
from .matrix_core import Bipartition, as_matrix
from .quantum_objects import (
    CNOT,
    H,
    I2,
    X,
    Y,
    Z,
    DensityMatrix,
    Gate,
    KrausChannel,
    amplitude_damping,
    apply_channel,
    apply_gate,
)

CUT_A_C = Bipartition.qubits(2, {0})
CUT_AB_CD = Bipartition.qubits(4, {0, 1})


@dataclass(frozen=True)
class DiagonalInputParams:
    """Weights of p*sigma_A (x) |0><0| + (1-p)*tau_A (x) |1><1| with
    sigma_A = diag(q, 1-q) and tau_A = diag(r, 1-r).

    The defaults give the experimental input p|00><00| + (1-p)|11><11|.
    """

    p: float = 0.5
    q: float = 1.0
    r: float = 0.0

    def __post_init__(self):
        for name in ("p", "q", "r"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise OutOfRange(f"{name}={v} outside [0, 1]")

    def state(self) -> DensityMatrix:
        p, q, r = self.p, self.q, self.r
        diag = [p * q, (1 - p) * r, p * (1 - q), (1 - p) * (1 - r)]
        return DensityMatrix(np.diag(diag).astype(np.complex128), 2)

    @property
    def factorized(self) -> bool:
        return self.p in (0.0, 1.0) or self.q == self.r


@dataclass(frozen=True, eq=False)
class ProtocolResult:
    rho_out: DensityMatrix
    negativity: float
    eta: float
    witness_expectation: Optional[float] = None
    adversary_gates: Optional[tuple] = None


@dataclass(frozen=True, eq=False)
class NoiseBlock:
    """H, then amplitude damping, then H, on one qubit."""

    eta: float
    steps: tuple

    def apply(self, rho: DensityMatrix, target: int) -> DensityMatrix:
        for step in self.steps:
            if isinstance(step, Gate):
                rho = apply_gate(step, rho, [target])
            else:
                rho = apply_channel(step, rho, target)
        return rho


def noise_block(eta: float) -> NoiseBlock:
    if not 0.0 <= eta <= 1.0:
        raise OutOfRange(f"eta={eta} outside [0, 1]")
    return NoiseBlock(eta, (H, amplitude_damping(eta), H))


def two_qubit_protocol(
    eta: float,
    eve: Optional[Gate] = None,
    block: Union[NoiseBlock, None] = None,
) -> ProtocolResult:
    """Run I/2 (x) |0><0| through the noise block on A, Eve's gate, CNOT A->C.

    ``block`` replaces the ideal noise block (used by the optics model).
    """
    block = block if block is not None else noise_block(eta)
    rho = DensityMatrix.maximally_mixed(1).tensor(DensityMatrix.basis("0"))
    rho = block.apply(rho, 0)
    if eve is not None:
        rho = apply_gate(eve, rho, [0])
    rho = apply_gate(CNOT, rho, [0, 1])
    return ProtocolResult(
        rho_out=rho,
        negativity=negativity(rho, CUT_A_C),
        eta=eta,
        adversary_gates=None if eve is None else (eve,),
    )


def four_qubit_input(params: DiagonalInputParams) -> DensityMatrix:
    return params.state().tensor(DensityMatrix.basis("00"))


def four_qubit_protocol(
    params: DiagonalInputParams,
    eta: float,
    eve_a: Optional[Gate] = None,
    eve_b: Optional[Gate] = None,
    block: Union[NoiseBlock, None] = None,
) -> ProtocolResult:
    block = block if block is not None else noise_block(eta)
    rho = block.apply(four_qubit_input(params), 0)
    if eve_a is not None:
        rho = apply_gate(eve_a, rho, [0])
    if eve_b is not None:
        rho = apply_gate(eve_b, rho, [1])
    rho = apply_gate(CNOT, rho, [0, 2])
    rho = apply_gate(CNOT, rho, [1, 3])
    gates = None
    if eve_a is not None or eve_b is not None:
        gates = (eve_a, eve_b)
    return ProtocolResult(
        rho_out=rho,
        negativity=negativity(rho, CUT_AB_CD),
        eta=eta,
        witness_expectation=expectation(build_witness_abcd(), rho),
        adversary_gates=gates,
    )


def analytic_negativity_offdiag(rho_in) -> float:
    """Output negativity predicted from the coherences of the pre-CNOT state.

    One qubit: |rho_01|. Two qubits: sum over i<j of |rho_ij|.
    """
    m = rho_in.mat if isinstance(rho_in, DensityMatrix) else as_matrix(rho_in)
    if m.shape[0] not in (2, 4):
        raise UnsupportedDim(f"expected a 1- or 2-qubit state, got dim {m.shape[0]}")
    return float(np.sum(np.abs(m[np.triu_indices(m.shape[0], k=1)])))


def rho_prime_a(x: float, eta: float) -> np.ndarray:
    """State of A after the noise block acting on diag(x, 1-x)."""
    return 0.5 * (I2 + eta * X + (2 * x - 1) * np.sqrt(1 - eta) * Z)


def rho_prime_ab(params: DiagonalInputParams, eta: float) -> DensityMatrix:
    """Closed form of the two-qubit state after the noise block on A."""
    if not 0.0 <= eta <= 1.0:
        raise OutOfRange(f"eta={eta} outside [0, 1]")
    p = params.p
    m = p * np.kron(rho_prime_a(params.q, eta), np.diag([1, 0])) + (1 - p) * np.kron(
        rho_prime_a(params.r, eta), np.diag([0, 1])
    )
    return DensityMatrix(m, 2)


def commutator_deviation(params: DiagonalInputParams, eta: float) -> float:
    """Operator norm of [rho'_A(q), rho'_A(r)], equal to eta*sqrt(1-eta)*|q-r|.

    The direct commutator is cross-checked entrywise against its closed
    form i*eta*sqrt(1-eta)*(q-r)*sigma_y.
    """
    if not 0.0 <= eta <= 1.0:
        raise OutOfRange(f"eta={eta} outside [0, 1]")
    a, b = rho_prime_a(params.q, eta), rho_prime_a(params.r, eta)
    comm = a @ b - b @ a
    closed = 1j * eta * np.sqrt(1 - eta) * (params.q - params.r) * Y
    err = np.max(np.abs(comm - closed))
    if err > 1e-12:
        raise NumericalMismatch(f"commutator differs from closed form by {err:.3e}")
    return float(np.linalg.norm(comm, 2))


def block_form_rho_out(p: float, eta: float) -> np.ndarray:
    """p rho+_AC (x) |00><00|_BD + (1-p) rho-_AC (x) |11><11|_BD, reordered to ABCD."""
    s = np.sqrt(1 - eta)

    def rho_pm(sign):
        m = np.zeros((4, 4))
        m[0, 0], m[3, 3] = 1 + sign * s, 1 - sign * s
        m[0, 3] = m[3, 0] = eta
        return m / 2

    bd00, bd11 = np.diag([1.0, 0, 0, 0]), np.diag([0, 0, 0, 1.0])
    acbd = p * np.kron(rho_pm(+1), bd00) + (1 - p) * np.kron(rho_pm(-1), bd11)
    # axes are (A, C, B, D); move to (A, B, C, D)
    t = acbd.reshape([2] * 8).transpose(0, 2, 1, 3, 4, 6, 5, 7)
    return t.reshape(16, 16).astype(np.complex128)


def channel_block(pre: Gate, channel: KrausChannel, post: Gate, eta: float) -> NoiseBlock:
    """Noise block with arbitrary single-qubit gates around the channel."""
    return NoiseBlock(eta, (pre, channel, post))
