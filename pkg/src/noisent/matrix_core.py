"""Dense complex-matrix kernel for registers of up to four qubits.

Basis convention (used everywhere in the package): subsystems are ordered
A, B, C, D from left to right and the computational basis index is the
binary number ``i_A i_B i_C i_D`` with A the most significant bit. For a
register of n qubits, qubit ``k`` therefore corresponds to bit ``n - 1 - k``
of the flat index and to tensor axis ``k`` after reshaping to ``[2] * n``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, NotHermitian

HERMITIAN_TOL = 1e-10
PSD_TOL = 1e-10
MAX_DIM = 16


def as_matrix(a) -> np.ndarray:
    """Return ``a`` as a square, finite complex128 array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def kron_all(mats: Iterable) -> np.ndarray:
    return reduce(kron, mats)


def adjoint(a) -> np.ndarray:
    return as_matrix(a).conj().T


def hermiticity_error(a) -> float:
    m = as_matrix(a)
    return float(np.max(np.abs(m - m.conj().T)))


def hermitian_eig(a, tol: float = HERMITIAN_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decompose a Hermitian matrix.

    Returns ascending real eigenvalues and the matching orthonormal
    eigenvectors as columns.
    """
    m = as_matrix(a)
    err = hermiticity_error(m)
    if err > tol:
        raise NotHermitian(f"max |a - a^dag| = {err:.3e} exceeds {tol:.1e}")
    # symmetrise so tiny anti-Hermitian noise does not leak into the result
    return np.linalg.eigh(0.5 * (m + m.conj().T))


@dataclass(frozen=True)
class Bipartition:
    """Subsystem dimensions plus the set of subsystems on the first side of a cut."""

    dims: tuple[int, ...]
    cut: frozenset[int]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        cut = frozenset(int(c) for c in self.cut)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "cut", cut)
        if not dims or any(d < 1 for d in dims):
            raise DimensionMismatch(f"invalid subsystem dims {dims}")
        if not cut or not cut < set(range(len(dims))):
            raise DimensionMismatch(
                f"cut {sorted(cut)} must be a nonempty proper subset of {list(range(len(dims)))}"
            )

    @classmethod
    def qubits(cls, n: int, cut: Iterable[int]) -> "Bipartition":
        return cls((2,) * n, frozenset(cut))

    @property
    def total_dim(self) -> int:
        return int(np.prod(self.dims))

    @property
    def n_sub(self) -> int:
        return len(self.dims)

    def complement(self) -> frozenset[int]:
        return frozenset(range(self.n_sub)) - self.cut


def _check_dims(m: np.ndarray, dims: Sequence[int]) -> None:
    if m.shape[0] != int(np.prod(dims)):
        raise DimensionMismatch(
            f"matrix dim {m.shape[0]} does not match subsystem dims {tuple(dims)}"
        )


def partial_transpose(rho, part: Bipartition) -> np.ndarray:
    """Transpose the indices of every subsystem in ``part.cut``."""
    m = as_matrix(rho)
    _check_dims(m, part.dims)
    n = part.n_sub
    t = m.reshape(part.dims + part.dims)
    axes = list(range(2 * n))
    for k in part.cut:
        axes[k], axes[n + k] = axes[n + k], axes[k]
    return t.transpose(axes).reshape(m.shape)


def partial_trace(rho, part: Bipartition, keep: Iterable[int]) -> np.ndarray:
    """Trace out every subsystem not in ``keep``; kept subsystems stay in order."""
    m = as_matrix(rho)
    _check_dims(m, part.dims)
    n = part.n_sub
    keep = sorted(set(int(k) for k in keep))
    if not keep or keep[0] < 0 or keep[-1] >= n:
        raise DimensionMismatch(f"keep set {keep} invalid for {n} subsystems")
    gone = [k for k in range(n) if k not in keep]
    dk = int(np.prod([part.dims[k] for k in keep]))
    dg = int(np.prod([part.dims[k] for k in gone])) if gone else 1
    t = m.reshape(part.dims + part.dims)
    t = t.transpose(keep + gone + [n + k for k in keep] + [n + k for k in gone])
    return np.einsum("ajbj->ab", t.reshape(dk, dg, dk, dg))


def embed_operator(op, targets: Sequence[int], n_qubits: int) -> np.ndarray:
    """Lift a k-qubit operator acting on ``targets`` (in that order) to n qubits."""
    op = as_matrix(op)
    k = len(targets)
    if op.shape[0] != 2**k:
        raise DimensionMismatch(f"operator of dim {op.shape[0]} cannot act on {k} qubits")
    rest = [q for q in range(n_qubits) if q not in targets]
    full = np.kron(op, np.eye(2 ** len(rest))).reshape([2] * (2 * n_qubits))
    order = list(targets) + rest
    inv = list(np.argsort(order))
    full = full.transpose(inv + [n_qubits + i for i in inv])
    return full.reshape(2**n_qubits, 2**n_qubits)
