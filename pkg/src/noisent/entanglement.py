"""Negativity, entanglement witnesses and their expectation values.

The PPT criterion is necessary and sufficient only for 2x2 and 2x3
systems. For larger cuts such as AB|CD a vanishing negativity is reported
as-is and is not a separability certificate.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import (
    DimensionMismatch,
    NoNegativeEigenvalues,
    NonrealExpectation,
    NotHermitian,
)
from .matrix_core import (
    HERMITIAN_TOL,
    PSD_TOL,
    Bipartition,
    as_matrix,
    hermitian_eig,
    hermiticity_error,
    kron_all,
    partial_transpose,
)
from .quantum_objects import PAULI, DensityMatrix

PAULI_ROUNDTRIP_TOL = 1e-12


def pauli_expand(terms) -> np.ndarray:
    """Sum of ``coef * P_1 (x) ... (x) P_n`` over ``(coef, "P_1...P_n")`` terms."""
    terms = list(terms)
    n = len(terms[0][1])
    out = np.zeros((2**n, 2**n), dtype=np.complex128)
    for coef, s in terms:
        out += coef * kron_all(PAULI[c] for c in s)
    return out


def pauli_decompose(mat, atol: float = 1e-14) -> tuple[tuple[float, str], ...]:
    """Real Pauli-string coefficients of a Hermitian matrix, tiny terms dropped."""
    m = as_matrix(mat)
    n = int(round(np.log2(m.shape[0])))
    terms = []
    for s in product("IXYZ", repeat=n):
        s = "".join(s)
        c = np.trace(kron_all(PAULI[ch] for ch in s) @ m).real / 2**n
        if abs(c) > atol:
            terms.append((float(c), s))
    return tuple(terms)


@dataclass(frozen=True, eq=False)
class WitnessOperator:
    mat: np.ndarray
    pauli_terms: tuple

    def __post_init__(self):
        m = as_matrix(self.mat)
        if hermiticity_error(m) > HERMITIAN_TOL:
            raise NotHermitian("witness must be Hermitian")
        err = np.max(np.abs(pauli_expand(self.pauli_terms) - m))
        if err > PAULI_ROUNDTRIP_TOL:
            raise ValueError(f"Pauli terms do not reproduce the matrix (err {err:.2e})")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)
        object.__setattr__(self, "pauli_terms", tuple(self.pauli_terms))

    @classmethod
    def from_matrix(cls, mat) -> "WitnessOperator":
        return cls(as_matrix(mat), pauli_decompose(mat))

    def settings(self) -> set[str]:
        """Non-identity Pauli strings needed to estimate this observable."""
        return {s for _, s in self.pauli_terms if set(s) != {"I"}}


def _mat(rho) -> np.ndarray:
    return rho.mat if isinstance(rho, DensityMatrix) else as_matrix(rho)


def negativity(rho, part: Bipartition) -> float:
    """Sum of |lambda| over eigenvalues of the partial transpose below -1e-10."""
    w, _ = hermitian_eig(partial_transpose(_mat(rho), part))
    neg = w[w < -PSD_TOL]
    return float(-neg.sum()) if neg.size else 0.0


def is_ppt(rho, part: Bipartition) -> bool:
    return negativity(rho, part) == 0.0


# (coefficient, AC string) x (coefficient, BD string) from the witness formula
_AC_TERMS = ((1, "II"), (-1, "XX"), (1, "YY"), (-1, "ZZ"))
_BD_TERMS = ((1, "II"), (1, "ZZ"))


def build_witness_abcd() -> WitnessOperator:
    """Four-qubit witness for the AB|CD cut, qubits ordered A, B, C, D."""
    terms = []
    for (ca, ac), (cb, bd) in product(_AC_TERMS, _BD_TERMS):
        terms.append((ca * cb / 8, ac[0] + bd[0] + ac[1] + bd[1]))
    return WitnessOperator(pauli_expand(terms), tuple(terms))


def witness_from_negative_subspace(rho, part: Bipartition) -> WitnessOperator:
    """Partial transpose of the projector onto the negative eigenspace of rho^T.

    Every eigenvector with eigenvalue below -1e-10 is included, so the
    projector covers whole (possibly degenerate) eigenspaces and does not
    depend on the eigensolver's choice of basis within them.
    """
    w, v = hermitian_eig(partial_transpose(_mat(rho), part))
    neg = v[:, w < -PSD_TOL]
    if neg.shape[1] == 0:
        raise NoNegativeEigenvalues("state is PPT across the given cut")
    proj = neg @ neg.conj().T
    return WitnessOperator.from_matrix(partial_transpose(proj, part))


def expectation(op, rho) -> float:
    """Real expectation value Tr(op rho)."""
    m = op.mat if isinstance(op, WitnessOperator) else as_matrix(op)
    r = _mat(rho)
    if m.shape != r.shape:
        raise DimensionMismatch(f"operator {m.shape} vs state {r.shape}")
    val = np.trace(m @ r)
    if abs(val.imag) >= 1e-10:
        raise NonrealExpectation(f"imaginary part {val.imag:.3e}")
    return float(val.real)
