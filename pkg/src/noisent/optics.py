"""Beam-splitter and attenuation-filter model of the amplitude damping channel.

The channel is built from two beam splitters (intensity transmission T,
reflection R) and three filters with intensity transmissions alpha0,
alpha1, alpha2. Photons absorbed by the filters are lost, so the output is
renormalised by the survival probability (post-selection).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InfeasibleCalibration, OutOfRange, ZeroSurvival
from .protocols import (
    DiagonalInputParams,
    ProtocolResult,
    channel_block,
    four_qubit_protocol,
    two_qubit_protocol,
)
from .quantum_objects import DensityMatrix, Gate, amplitude_damping

DEFAULT_T = 0.575
DEFAULT_R = 0.425
MODEL_LABEL = "model:unbalanced-bs"


@dataclass(frozen=True)
class OpticalParams:
    T: float = DEFAULT_T
    R: float = DEFAULT_R
    alpha0: float = DEFAULT_R**2 / DEFAULT_T
    alpha1: float = 0.0
    alpha2: float = DEFAULT_R**2 / DEFAULT_T

    def __post_init__(self):
        if not (0 < self.T < 1 and 0 < self.R < 1):
            raise OutOfRange(f"T={self.T}, R={self.R} must lie in (0, 1)")
        if self.T + self.R > 1 + 1e-9:
            raise OutOfRange(f"T + R = {self.T + self.R} exceeds 1")
        for name in ("alpha0", "alpha1", "alpha2"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise OutOfRange(f"{name}={v} outside [0, 1]")

    @classmethod
    def calibrated(cls, eta: float, T: float = DEFAULT_T, R: float = DEFAULT_R) -> "OpticalParams":
        return cls(T, R, *calibrate_filters(eta, T, R))


def calibrate_filters(eta: float, T: float, R: float) -> tuple[float, float, float]:
    """Filter transmissions that make the optical set-up act as damping ``eta``.

    With alpha0 = R^2/T the identification gives alpha1 = eta and
    alpha2 = alpha0 * (1 - eta).
    """
    if not 0.0 <= eta <= 1.0:
        raise OutOfRange(f"eta={eta} outside [0, 1]")
    if not (0 < T < 1 and 0 < R < 1):
        raise OutOfRange(f"T={T}, R={R} must lie in (0, 1)")
    alpha0 = R**2 / T
    if alpha0 > 1:
        raise InfeasibleCalibration(f"R^2/T = {alpha0:.4f} exceeds 1")
    return alpha0, eta, alpha0 * (1 - eta)


def _unpack(rho) -> tuple[float, complex]:
    m = rho.mat if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    return float(m[1, 1].real), complex(m[0, 1])


def survival_probability(rho, params: OpticalParams) -> float:
    """Probability that the photon is not absorbed (the inverse normalisation)."""
    beta, _ = _unpack(rho)
    T, R = params.T, params.R
    return (1 - beta) * T * params.alpha0 + beta * R**2 * params.alpha1 + beta * T * params.alpha2


def physical_channel(rho: DensityMatrix, params: OpticalParams) -> DensityMatrix:
    """Post-selected single-qubit output of the filter/beam-splitter network."""
    beta, gamma = _unpack(rho)
    T, R = params.T, params.R
    surv = survival_probability(rho, params)
    if surv <= 0:
        raise ZeroSurvival("every path is blocked; output undefined")
    xi = 1 / surv
    coh = xi * gamma * T * np.sqrt(params.alpha0 * params.alpha2)
    m = np.array(
        [
            [xi * ((1 - beta) * T * params.alpha0 + beta * R**2 * params.alpha1), coh],
            [np.conj(coh), xi * beta * T * params.alpha2],
        ],
        dtype=np.complex128,
    )
    return DensityMatrix(m, 1)


def splitter_unitary(T: float, R: float) -> Gate:
    """Hadamard-like unbalanced beam splitter [[sqrt T, sqrt R], [sqrt R, -sqrt T]].

    For a lossy splitter (T + R < 1) the matrix is replaced by its nearest
    unitary (polar factor). T = R = 1/2 gives H exactly.
    """
    b = np.array([[np.sqrt(T), np.sqrt(R)], [np.sqrt(R), -np.sqrt(T)]], dtype=np.complex128)
    u, _, vh = np.linalg.svd(b)
    return Gate(u @ vh, 1, f"BS(T={T:g})")


def imperfect_protocol(
    params: DiagonalInputParams,
    eta: float,
    T: float = DEFAULT_T,
    R: float = DEFAULT_R,
    n_qubits: int = 4,
) -> ProtocolResult:
    """Ideal circuit with both Hadamards replaced by unbalanced splitters."""
    bs = splitter_unitary(T, R)
    block = channel_block(bs, amplitude_damping(eta), bs, eta)
    if n_qubits == 2:
        return two_qubit_protocol(eta, block=block)
    if n_qubits == 4:
        return four_qubit_protocol(params, eta, block=block)
    raise OutOfRange(f"n_qubits must be 2 or 4, got {n_qubits}")
