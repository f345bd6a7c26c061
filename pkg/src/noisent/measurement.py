"""Finite-shot simulation of Pauli measurements, witness estimation and
two-qubit tomography.

Outcome bitstrings follow the register order (A most significant). Bit 0
on a qubit means the +1 eigenvector of that qubit's Pauli was observed.
Every estimator works on frequency arrays with an optional leading batch
axis so that bootstrap resamples are evaluated in one vectorised pass.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Sequence, Union

import numpy as np

from .entanglement import build_witness_abcd
from .errors import DimensionMismatch, MissingSetting
from .quantum_objects import PAULI, DensityMatrix

DEFAULT_RESAMPLES = 1000

# rotations taking each Pauli eigenbasis to the computational basis
_ROTATIONS = {
    "Z": np.eye(2, dtype=np.complex128),
    "X": np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2),
    "Y": np.array([[1, -1j], [1, 1j]], dtype=np.complex128) / np.sqrt(2),
}

WITNESS_SETTINGS = ("XZXZ", "YZYZ", "ZZZZ")


@dataclass(frozen=True)
class MeasurementSetting:
    paulis: str

    def __post_init__(self):
        if not self.paulis or set(self.paulis) - set("XYZ"):
            raise ValueError(f"setting {self.paulis!r} must be a nonempty string over X, Y, Z")

    @property
    def n_qubits(self) -> int:
        return len(self.paulis)

    def covers(self, pauli_string: str) -> bool:
        """True if this setting's data determines ``<pauli_string>``."""
        return len(pauli_string) == self.n_qubits and all(
            c == "I" or c == s for c, s in zip(pauli_string, self.paulis)
        )


@dataclass(frozen=True)
class CountRecord:
    setting: MeasurementSetting
    counts: dict
    total: int

    def __post_init__(self):
        if self.total <= 0:
            raise ValueError("total must be positive")
        if any(c < 0 for c in self.counts.values()):
            raise ValueError("counts must be nonnegative")
        if sum(self.counts.values()) != self.total:
            raise ValueError("counts do not sum to total")

    def count_array(self) -> np.ndarray:
        n = self.setting.n_qubits
        arr = np.zeros(2**n, dtype=np.int64)
        for bits, c in self.counts.items():
            arr[int(bits, 2)] = c
        return arr

    def frequencies(self) -> np.ndarray:
        return self.count_array() / self.total


@dataclass(frozen=True, eq=False)
class ExactRecord:
    """Infinite-shot stand-in for a CountRecord: exact outcome probabilities."""

    setting: MeasurementSetting
    probs: np.ndarray

    def frequencies(self) -> np.ndarray:
        return np.asarray(self.probs, dtype=float)


Record = Union[CountRecord, ExactRecord]


def _setting(s) -> MeasurementSetting:
    return s if isinstance(s, MeasurementSetting) else MeasurementSetting(s)


def outcome_probabilities(rho: DensityMatrix, setting) -> np.ndarray:
    """Born-rule probabilities of the 2**n outcomes, indexed by outcome integer."""
    setting = _setting(setting)
    if setting.n_qubits != rho.n_qubits:
        raise DimensionMismatch(
            f"setting acts on {setting.n_qubits} qubits, state has {rho.n_qubits}"
        )
    u = np.array([[1.0]], dtype=np.complex128)
    for c in setting.paulis:
        u = np.kron(u, _ROTATIONS[c])
    p = np.real(np.diag(u @ rho.mat @ u.conj().T))
    p = np.clip(p, 0.0, None)
    return p / p.sum()


def exact_record(rho: DensityMatrix, setting) -> ExactRecord:
    setting = _setting(setting)
    return ExactRecord(setting, outcome_probabilities(rho, setting))


def sample_counts(probs, shots: int, seed: int, setting=None) -> CountRecord:
    """Multinomial draw of ``shots`` outcomes (fixed total per setting)."""
    if shots <= 0:
        raise ValueError("shots must be positive")
    probs = np.asarray(probs, dtype=float)
    n = int(round(np.log2(probs.size)))
    setting = _setting(setting) if setting is not None else MeasurementSetting("Z" * n)
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(shots, probs / probs.sum())
    labels = [format(i, f"0{n}b") for i in range(probs.size)]
    return CountRecord(setting, dict(zip(labels, (int(c) for c in counts))), int(shots))


def derive_seed(master: int, *index: int) -> int:
    """Independent child seed for task ``index`` of a run seeded with ``master``."""
    return int(np.random.SeedSequence([master, *index]).generate_state(1, np.uint64)[0])


def _parity_signs(pauli_string: str) -> np.ndarray:
    """(+1/-1) eigenvalue of the Pauli string for each outcome integer."""
    n = len(pauli_string)
    idx = np.arange(2**n)
    sign = np.ones(2**n)
    for k, c in enumerate(pauli_string):
        if c != "I":
            bit = (idx >> (n - 1 - k)) & 1
            sign *= 1 - 2 * bit
    return sign


def _pauli_mean(pauli_string: str, settings: Sequence[MeasurementSetting], freqs: Sequence[np.ndarray]):
    """Average of <pauli_string> over every record whose setting covers it."""
    if set(pauli_string) == {"I"}:
        return np.ones(np.shape(freqs[0])[:-1])
    idx = [i for i, s in enumerate(settings) if s.covers(pauli_string)]
    if not idx:
        raise MissingSetting(f"no record covers {pauli_string}")
    signs = _parity_signs(pauli_string)
    return sum(freqs[i] @ signs for i in idx) / len(idx)


def observable_from_freqs(pauli_terms, settings, freqs):
    return sum(c * _pauli_mean(s, settings, freqs) for c, s in pauli_terms)


def _witness_value(settings, freqs):
    present = {s.paulis for s in settings}
    missing = set(WITNESS_SETTINGS) - present
    if missing:
        raise MissingSetting(f"missing witness settings {sorted(missing)}")
    return observable_from_freqs(build_witness_abcd().pauli_terms, settings, freqs)


_TOMO_STRINGS = ["".join(s) for s in product("IXYZ", repeat=2)]
_TOMO_BASIS = {s: np.kron(PAULI[s[0]], PAULI[s[1]]) for s in _TOMO_STRINGS}


def _linear_inversion_2q(settings, freqs) -> np.ndarray:
    present = {s.paulis for s in settings}
    missing = {a + b for a in "XYZ" for b in "XYZ"} - present
    if missing:
        raise MissingSetting(f"missing tomography settings {sorted(missing)}")
    rho = 0
    for s in _TOMO_STRINGS:
        e = np.asarray(_pauli_mean(s, settings, freqs))
        rho = rho + e[..., None, None] * _TOMO_BASIS[s]
    return rho / 4


def _clip_to_state(m: np.ndarray) -> np.ndarray:
    """Zero negative eigenvalues and renormalise (works on batches)."""
    w, v = np.linalg.eigh(0.5 * (m + np.swapaxes(m.conj(), -1, -2)))
    w = np.clip(w, 0.0, None)
    w = w / w.sum(axis=-1, keepdims=True)
    return (v * w[..., None, :]) @ np.swapaxes(v.conj(), -1, -2)


def _negativity_2q_batch(m: np.ndarray) -> np.ndarray:
    pt = m.reshape(m.shape[:-2] + (2, 2, 2, 2)).swapaxes(-4, -2).reshape(m.shape)
    w = np.linalg.eigvalsh(pt)
    return -np.where(w < -1e-10, w, 0.0).sum(axis=-1)


def _unzip(records: Sequence[Record]):
    return [r.setting for r in records], [r.frequencies() for r in records]


def witness_estimate(
    records: Sequence[Record], resamples: int = DEFAULT_RESAMPLES, seed: int = 0
) -> tuple[float, float]:
    """<W> from the three witness settings, with a bootstrap standard error."""
    settings, freqs = _unzip(records)
    value = float(_witness_value(settings, freqs))
    if any(isinstance(r, ExactRecord) for r in records):
        return value, 0.0
    return value, bootstrap_sigma(records, "witness", resamples, seed)


def tomography_2q(records: Sequence[Record]) -> DensityMatrix:
    """Linear-inversion estimate projected onto the state space by eigenvalue clipping."""
    settings, freqs = _unzip(records)
    if any(s.n_qubits != 2 for s in settings):
        raise DimensionMismatch("tomography_2q needs two-qubit settings")
    return DensityMatrix(_clip_to_state(_linear_inversion_2q(settings, freqs)), 2)


STATISTICS: dict[str, Callable] = {
    "witness": _witness_value,
    "negativity_2q": lambda s, f: _negativity_2q_batch(_clip_to_state(_linear_inversion_2q(s, f))),
}


def bootstrap_sigma(
    records: Sequence[CountRecord],
    statistic: Union[str, Callable] = "witness",
    resamples: int = DEFAULT_RESAMPLES,
    seed: int = 0,
) -> float:
    """Standard deviation of a statistic over multinomial resamples of every record.

    ``statistic`` is a name from ``STATISTICS`` or a callable
    ``f(settings, freqs) -> array`` accepting frequency arrays with a
    leading resample axis.
    """
    if resamples < 100:
        raise ValueError("use at least 100 resamples")
    fn = STATISTICS[statistic] if isinstance(statistic, str) else statistic
    rng = np.random.default_rng(seed)
    settings, boot = [], []
    for rec in records:
        counts = rec.count_array()
        draws = rng.multinomial(rec.total, counts / rec.total, size=resamples)
        settings.append(rec.setting)
        boot.append(draws / rec.total)
    values = np.asarray(fn(settings, boot), dtype=float)
    return float(np.std(values, ddof=1))
