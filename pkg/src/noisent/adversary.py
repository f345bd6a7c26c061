"""Adversarial minimisation of output negativity over local unitaries.

Eve acts with single-qubit unitaries just before the CNOT stage. Her
gates are parameterised by ``su2_gate`` angles (global phase dropped) and
the negativity is minimised with multi-start Nelder-Mead, since the
objective has kinks wherever eigenvalues of the partial transpose cross
zero.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .matrix_core import PSD_TOL, embed_operator
from .protocols import (
    CUT_A_C,
    CUT_AB_CD,
    DiagonalInputParams,
    four_qubit_input,
    noise_block,
)
from .quantum_objects import CNOT, DensityMatrix

MAX_EVALS = 2000
SPREAD_TOL = 1e-10
AGREE_TOL = 1e-6
MIN_AGREEING = 3
MAX_RELAUNCHES = 20
RELAUNCH_RADIUS = 1.0


@dataclass(frozen=True)
class AdversaryOutcome:
    min_negativity: float
    best_angles: tuple
    restarts_used: int
    converged: bool


def _u3(angles: np.ndarray) -> np.ndarray:
    theta, phi, lam = angles
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array(
        [
            [c, -np.exp(1j * lam) * s],
            [np.exp(1j * phi) * s, np.exp(1j * (phi + lam)) * c],
        ]
    )


def _pt_negativity(out: np.ndarray, n: int, cut: tuple) -> float:
    t = out.reshape([2] * (2 * n))
    axes = list(range(2 * n))
    for k in cut:
        axes[k], axes[n + k] = axes[n + k], axes[k]
    w = np.linalg.eigvalsh(t.transpose(axes).reshape(out.shape))
    w = w[w < -PSD_TOL]
    return float(-w.sum()) if w.size else 0.0


class _Objective2q:
    """Negativity of the two-qubit output as a function of Eve's angles."""

    def __init__(self, eta: float):
        rho = DensityMatrix.maximally_mixed(1).tensor(DensityMatrix.basis("0"))
        self.pre = noise_block(eta).apply(rho, 0).mat
        self.cnot = CNOT.mat

    def __call__(self, angles) -> float:
        u = self.cnot @ np.kron(_u3(angles), np.eye(2))
        return _pt_negativity(u @ self.pre @ u.conj().T, 2, tuple(CUT_A_C.cut))


class _Objective4q:
    def __init__(self, params: DiagonalInputParams, eta: float):
        self.pre = noise_block(eta).apply(four_qubit_input(params), 0).mat
        self.cnots = embed_operator(CNOT.mat, [1, 3], 4) @ embed_operator(CNOT.mat, [0, 2], 4)

    def __call__(self, angles) -> float:
        local = np.kron(np.kron(_u3(angles[:3]), _u3(angles[3:])), np.eye(4))
        u = self.cnots @ local
        return _pt_negativity(u @ self.pre @ u.conj().T, 4, tuple(CUT_AB_CD.cut))


class _HitFloor(Exception):
    def __init__(self, x):
        self.x = x


def _stop_at_zero(objective):
    # negativity is nonnegative, so an exact zero is already the global minimum
    def wrapped(x):
        v = objective(x)
        if v <= 0.0:
            raise _HitFloor(np.array(x, dtype=float))
        return v

    return wrapped


def _local_search(objective, x0: np.ndarray) -> tuple[float, np.ndarray]:
    """Nelder-Mead, re-launched from its own optimum until it stops improving.

    A single simplex run regularly stalls on the kinks of the negativity
    surface; a fresh simplex of unit radius around the stall point is
    usually enough to slide off.
    """
    dim = x0.size
    x, best = x0, np.inf
    guarded = _stop_at_zero(objective)
    for k in range(MAX_RELAUNCHES):
        opts = {"maxfev": MAX_EVALS, "fatol": SPREAD_TOL, "xatol": 1e-9, "adaptive": dim > 3}
        if k:
            opts["initial_simplex"] = np.vstack([x, x + RELAUNCH_RADIUS * np.eye(dim)])
        try:
            res = minimize(guarded, x, method="Nelder-Mead", options=opts)
        except _HitFloor as hit:
            return 0.0, hit.x
        if res.fun > best - SPREAD_TOL:
            break
        best, x = float(res.fun), res.x
    return best, x


def _multistart(objective, dim: int, budget: int, seed: int) -> AdversaryOutcome:
    if budget < 1:
        raise ValueError("budget must be at least 1")
    rng = np.random.default_rng(seed)
    starts = rng.uniform(0.0, 2 * np.pi, size=(budget, dim))
    runs = [_local_search(objective, x0) for x0 in starts]
    values = np.array([v for v, _ in runs])
    best = int(np.argmin(values))
    agreeing = int(np.sum(values - values[best] < AGREE_TOL))
    return AdversaryOutcome(
        min_negativity=float(values[best]),
        best_angles=tuple(float(a) for a in np.mod(runs[best][1], 2 * np.pi)),
        restarts_used=budget,
        converged=agreeing >= min(MIN_AGREEING, budget),
    )


def minimize_negativity_2q(eta: float, budget: int = 32, seed: int = 0) -> AdversaryOutcome:
    """Smallest two-qubit output negativity Eve can reach with one gate on A."""
    return _multistart(_Objective2q(eta), 3, budget, seed)


def minimize_negativity_4q(
    params: DiagonalInputParams, eta: float, budget: int = 32, seed: int = 0
) -> AdversaryOutcome:
    """Smallest AB|CD negativity Eve can reach with gates on A and B."""
    return _multistart(_Objective4q(params, eta), 6, budget, seed)
