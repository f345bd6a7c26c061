import numpy as np
import pytest
from itertools import product

from noisent.entanglement import build_witness_abcd, expectation, negativity
from noisent.errors import DimensionMismatch, MissingSetting
from noisent.measurement import (
    WITNESS_SETTINGS,
    CountRecord,
    MeasurementSetting,
    bootstrap_sigma,
    derive_seed,
    exact_record,
    observable_from_freqs,
    outcome_probabilities,
    sample_counts,
    tomography_2q,
    witness_estimate,
)
from noisent.protocols import CUT_A_C, DiagonalInputParams, four_qubit_protocol, two_qubit_protocol
from noisent.quantum_objects import DensityMatrix, random_density_matrix

BELL = DensityMatrix.from_ket([1, 0, 0, 1])
TOMO = [a + b for a in "XYZ" for b in "XYZ"]


def rho_4q(eta, p=0.5):
    return four_qubit_protocol(DiagonalInputParams(p, 1, 0), eta).rho_out


def sampled(rho, settings, shots, seed):
    return [
        sample_counts(outcome_probabilities(rho, s), shots, derive_seed(seed, k), s)
        for k, s in enumerate(settings)
    ]


def test_setting_validation():
    with pytest.raises(ValueError):
        MeasurementSetting("XQ")
    assert MeasurementSetting("XZ").covers("XI")
    assert not MeasurementSetting("XZ").covers("YI")


def test_count_record_validation():
    with pytest.raises(ValueError):
        CountRecord(MeasurementSetting("Z"), {"0": 3, "1": 2}, 6)
    with pytest.raises(ValueError):
        CountRecord(MeasurementSetting("Z"), {"0": 0}, 0)


def test_outcome_probabilities_bell():
    assert np.allclose(outcome_probabilities(BELL, "ZZ"), [0.5, 0, 0, 0.5])
    assert np.allclose(outcome_probabilities(BELL, "XX"), [0.5, 0, 0, 0.5])
    # <YY> = -1 on |Phi+>: outcomes always anticorrelated
    assert np.allclose(outcome_probabilities(BELL, "YY"), [0, 0.5, 0.5, 0])


def test_outcome_probabilities_zzzz_diagonal():
    rho = rho_4q(1.0)
    probs = outcome_probabilities(rho, "ZZZZ")
    assert np.allclose(probs, np.real(np.diag(rho.mat)))
    expected = np.zeros(16)
    expected[[0b0000, 0b1010, 0b0101, 0b1111]] = 0.25
    assert np.allclose(probs, expected)


def test_outcome_probabilities_reproduce_pauli_expectations(rng):
    rho = random_density_matrix(3, rng)
    from noisent.entanglement import pauli_expand

    for s in ("XYZ", "ZZX", "YYY"):
        probs = outcome_probabilities(rho, s)
        assert abs(probs.sum() - 1) < 1e-12 and probs.min() >= 0
        est = observable_from_freqs([(1.0, s)], [MeasurementSetting(s)], [probs])
        assert abs(est - expectation(pauli_expand([(1.0, s)]), rho)) < 1e-12


def test_outcome_probabilities_dimension_check():
    with pytest.raises(DimensionMismatch):
        outcome_probabilities(BELL, "ZZZ")


def test_sample_counts_statistics():
    rec = sample_counts([0.5, 0.5], 10**6, seed=1)
    assert rec.total == 10**6
    assert abs(rec.counts["0"] - 500_000) < 5 * 500
    assert rec == sample_counts([0.5, 0.5], 10**6, seed=1)
    assert rec.counts == {"0": 499701, "1": 500299}  # frozen regression value
    assert sample_counts([0.3, 0.0, 0.7, 0.0], 1000, seed=2).counts["01"] == 0


def test_frequencies_converge():
    rho = rho_4q(0.5)
    worst = 0.0
    for k, s in enumerate(WITNESS_SETTINGS):
        probs = outcome_probabilities(rho, s)
        rec = sample_counts(probs, 10**6, derive_seed(3, k), s)
        worst = max(worst, np.max(np.abs(rec.frequencies() - probs)))
    assert worst < 0.005


def test_witness_estimate_exact_limit(rng):
    w = build_witness_abcd()
    for _ in range(20):
        rho = random_density_matrix(4, rng)
        value, sigma = witness_estimate([exact_record(rho, s) for s in WITNESS_SETTINGS])
        assert abs(value - expectation(w, rho)) < 1e-12
        assert sigma == 0


def test_witness_three_settings_agree_with_full_pauli_data():
    rho = rho_4q(0.6)
    three = sampled(rho, WITNESS_SETTINGS, 50_000, 1)
    all81 = ["".join(s) for s in product("XYZ", repeat=4)]
    full = sampled(rho, all81, 50_000, 2)
    v3, s3 = witness_estimate(three, seed=1)
    v81, s81 = witness_estimate(full, seed=2)
    assert abs(v3 - v81) < 3 * np.hypot(s3, s81)


def test_witness_estimate_missing_setting():
    rho = rho_4q(0.6)
    with pytest.raises(MissingSetting):
        witness_estimate([exact_record(rho, s) for s in WITNESS_SETTINGS[:2]])


@pytest.mark.parametrize("eta", [0.0, 0.6])
def test_witness_estimate_statistics(eta):
    hits = 0
    for trial in range(100):
        value, sigma = witness_estimate(sampled(rho_4q(eta), WITNESS_SETTINGS, 10**5, trial), seed=trial)
        hits += abs(value + eta / 2) < 3 * sigma
    assert hits >= 97


def test_tomography_exact_roundtrip(rng):
    for _ in range(50):
        rho = random_density_matrix(2, rng)
        est = tomography_2q([exact_record(rho, s) for s in TOMO])
        diff = np.linalg.eigvalsh(est.mat - rho.mat)
        assert 0.5 * np.abs(diff).sum() < 1e-10


def test_tomography_exact_protocol_negativity():
    rho = two_qubit_protocol(0.8).rho_out
    est = tomography_2q([exact_record(rho, s) for s in TOMO])
    assert abs(negativity(est, CUT_A_C) - 0.4) < 1e-10


def test_tomography_missing_setting():
    with pytest.raises(MissingSetting):
        tomography_2q([exact_record(BELL, s) for s in TOMO[:-1]])


def test_tomography_output_is_state():
    rec = sampled(two_qubit_protocol(0.8).rho_out, TOMO, 200, 9)
    est = tomography_2q(rec)
    assert np.linalg.eigvalsh(est.mat).min() > -1e-10


def test_tomography_negativity_statistics():
    rho = two_qubit_protocol(0.8).rho_out
    hits = 0
    for trial in range(200):
        rec = sampled(rho, TOMO, 10**4, trial)
        est = negativity(tomography_2q(rec), CUT_A_C)
        sigma = bootstrap_sigma(rec, "negativity_2q", 200, seed=trial)
        hits += abs(est - 0.4) < 3 * sigma
    assert hits >= 190


def test_bootstrap_sigma_deterministic_counts():
    rec = [CountRecord(MeasurementSetting(s), {format(i, "04b"): 1000 * (i == 0) for i in range(16)}, 1000) for s in WITNESS_SETTINGS]
    assert bootstrap_sigma(rec, "witness", 200, seed=0) == 0


def test_bootstrap_sigma_scaling_and_reproducibility():
    rho = rho_4q(0.6)
    small = sampled(rho, WITNESS_SETTINGS, 10**4, 1)
    large = sampled(rho, WITNESS_SETTINGS, 10**6, 1)
    s_small = bootstrap_sigma(small, "witness", 1000, seed=4)
    s_large = bootstrap_sigma(large, "witness", 1000, seed=4)
    assert 8 <= s_small / s_large <= 12
    assert s_small == bootstrap_sigma(small, "witness", 1000, seed=4)


def test_bootstrap_custom_statistic():
    rec = sampled(BELL, ["ZZ"], 10_000, 0)

    def zz(settings, freqs):
        return observable_from_freqs([(1.0, "ZI")], settings, freqs)

    sigma = bootstrap_sigma(rec, zz, 500, seed=1)
    assert 0.005 < sigma < 0.015  # binomial: 1/sqrt(10^4) = 0.01
    with pytest.raises(ValueError):
        bootstrap_sigma(rec, zz, 50)


def test_derive_seed_independent_streams():
    seeds = {derive_seed(0, i, k) for i in range(20) for k in range(5)}
    assert len(seeds) == 100
    assert derive_seed(1, 2) == derive_seed(1, 2)
