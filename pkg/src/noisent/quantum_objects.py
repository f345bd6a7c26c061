"""Validated states, gates and Kraus channels."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    DuplicateTarget,
    InvalidState,
    NotTracePreserving,
    NotUnitary,
    OutOfRange,
)
from .matrix_core import (
    HERMITIAN_TOL,
    PSD_TOL,
    as_matrix,
    embed_operator,
    hermiticity_error,
)

TRACE_TOL = 1e-10
UNITARY_TOL = 1e-10


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.complex128, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    mat: np.ndarray
    n_qubits: int

    def __post_init__(self):
        m = as_matrix(self.mat)
        if m.shape[0] != 2**self.n_qubits:
            raise DimensionMismatch(f"dim {m.shape[0]} is not 2**{self.n_qubits}")
        herr = hermiticity_error(m)
        if herr > HERMITIAN_TOL:
            raise InvalidState(f"not Hermitian (max deviation {herr:.3e})")
        tr = np.trace(m)
        if abs(tr - 1) > TRACE_TOL:
            raise InvalidState(f"trace {tr} differs from 1")
        lmin = np.linalg.eigvalsh(0.5 * (m + m.conj().T))[0]
        if lmin < -PSD_TOL:
            raise InvalidState(f"negative eigenvalue {lmin:.3e}")
        object.__setattr__(self, "mat", _frozen(m))

    @classmethod
    def from_matrix(cls, mat) -> "DensityMatrix":
        m = as_matrix(mat)
        n = int(round(np.log2(m.shape[0])))
        return cls(m, n)

    @classmethod
    def from_ket(cls, psi) -> "DensityMatrix":
        psi = np.asarray(psi, dtype=np.complex128).ravel()
        psi = psi / np.linalg.norm(psi)
        return cls.from_matrix(np.outer(psi, psi.conj()))

    @classmethod
    def basis(cls, bits: str) -> "DensityMatrix":
        """Computational basis projector, e.g. ``basis("10")`` is |10><10|."""
        d = 2 ** len(bits)
        m = np.zeros((d, d), dtype=np.complex128)
        i = int(bits, 2)
        m[i, i] = 1
        return cls(m, len(bits))

    @classmethod
    def maximally_mixed(cls, n_qubits: int) -> "DensityMatrix":
        d = 2**n_qubits
        return cls(np.eye(d) / d, n_qubits)

    def tensor(self, other: "DensityMatrix") -> "DensityMatrix":
        return DensityMatrix(np.kron(self.mat, other.mat), self.n_qubits + other.n_qubits)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


@dataclass(frozen=True, eq=False)
class Gate:
    mat: np.ndarray
    arity: int
    name: str = ""

    def __post_init__(self):
        m = as_matrix(self.mat)
        if m.shape[0] != 2**self.arity:
            raise DimensionMismatch(f"gate dim {m.shape[0]} is not 2**{self.arity}")
        err = np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0])))
        if err > UNITARY_TOL:
            raise NotUnitary(f"max |U^dag U - I| = {err:.3e}")
        object.__setattr__(self, "mat", _frozen(m))

    def dagger(self) -> "Gate":
        return Gate(self.mat.conj().T, self.arity, f"{self.name}^dag")


@dataclass(frozen=True, eq=False)
class KrausChannel:
    ops: tuple
    label: str = ""
    _dim: int = field(init=False, repr=False, default=0)

    def __post_init__(self):
        ops = tuple(_frozen(as_matrix(a)) for a in self.ops)
        if not ops:
            raise ValueError("a channel needs at least one Kraus operator")
        d = ops[0].shape[0]
        if any(a.shape[0] != d for a in ops):
            raise DimensionMismatch("Kraus operators differ in dimension")
        s = sum(a.conj().T @ a for a in ops)
        err = np.max(np.abs(s - np.eye(d)))
        if err > TRACE_TOL:
            raise NotTracePreserving(f"max |sum A^dag A - I| = {err:.3e}")
        object.__setattr__(self, "ops", ops)
        object.__setattr__(self, "_dim", d)

    @property
    def dim(self) -> int:
        return self._dim


I2 = np.eye(2, dtype=np.complex128)
X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULI = {"I": I2, "X": X, "Y": Y, "Z": Z}

H = Gate(np.array([[1, 1], [1, -1]]) / np.sqrt(2), 1, "H")
PAULI_X = Gate(X, 1, "X")
PAULI_Y = Gate(Y, 1, "Y")
PAULI_Z = Gate(Z, 1, "Z")
IDENTITY = Gate(I2, 1, "I")
# control is the first target, target bit the second
CNOT = Gate(
    np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]), 2, "CNOT"
)


def su2_gate(theta: float, phi: float, lam: float) -> Gate:
    """General single-qubit unitary (global phase dropped)."""
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    m = np.array(
        [
            [c, -np.exp(1j * lam) * s],
            [np.exp(1j * phi) * s, np.exp(1j * (phi + lam)) * c],
        ]
    )
    return Gate(m, 1, "U3")


def amplitude_damping(eta: float) -> KrausChannel:
    """Amplitude damping toward |0> with damping probability ``eta``.

    Zero Kraus operators are pruned, so ``eta = 0`` gives the single
    operator I.
    """
    if not 0.0 <= eta <= 1.0:
        raise OutOfRange(f"eta={eta} outside [0, 1]")
    a1 = np.array([[1, 0], [0, np.sqrt(1 - eta)]], dtype=np.complex128)
    a2 = np.array([[0, np.sqrt(eta)], [0, 0]], dtype=np.complex128)
    ops = [a for a in (a1, a2) if np.any(a != 0)]
    return KrausChannel(tuple(ops), f"amplitude_damping({eta:g})")


def unitary_channel(g: Gate) -> KrausChannel:
    return KrausChannel((g.mat,), f"conj({g.name})")


def is_unital(ch: KrausChannel, tol: float = 1e-10) -> tuple[bool, float]:
    """Return (unital?, operator-norm deviation of sum A A^dag from I)."""
    s = sum(a @ a.conj().T for a in ch.ops)
    dev = float(np.linalg.norm(s - np.eye(ch.dim), 2))
    return dev < tol, dev


def _check_targets(targets: Sequence[int], n: int) -> None:
    if len(set(targets)) != len(targets):
        raise DuplicateTarget(f"repeated qubit in targets {list(targets)}")
    if any(t < 0 or t >= n for t in targets):
        raise DimensionMismatch(f"targets {list(targets)} out of range for {n} qubits")


def apply_channel(ch: KrausChannel, rho: DensityMatrix, target: int) -> DensityMatrix:
    if ch.dim != 2:
        raise DimensionMismatch("only single-qubit channels can be embedded")
    _check_targets([target], rho.n_qubits)
    out = np.zeros_like(rho.mat)
    for a in ch.ops:
        e = embed_operator(a, [target], rho.n_qubits)
        out += e @ rho.mat @ e.conj().T
    return DensityMatrix(out, rho.n_qubits)


def apply_gate(g: Gate, rho: DensityMatrix, targets: Sequence[int]) -> DensityMatrix:
    targets = [int(t) for t in targets]
    if g.arity != len(targets):
        raise DimensionMismatch(f"gate arity {g.arity} but {len(targets)} targets")
    _check_targets(targets, rho.n_qubits)
    u = embed_operator(g.mat, targets, rho.n_qubits)
    return DensityMatrix(u @ rho.mat @ u.conj().T, rho.n_qubits)


def random_density_matrix(n_qubits: int, rng: np.random.Generator, rank: int | None = None) -> DensityMatrix:
    """Ginibre-ensemble random state (full rank unless ``rank`` is given)."""
    d = 2**n_qubits
    k = d if rank is None else rank
    g = rng.normal(size=(d, k)) + 1j * rng.normal(size=(d, k))
    m = g @ g.conj().T
    return DensityMatrix(m / np.trace(m).real, n_qubits)


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR with phase correction."""
    z = (rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))
