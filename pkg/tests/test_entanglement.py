import numpy as np
import pytest
from hypothesis import given, strategies as st

from noisent.entanglement import (
    WitnessOperator,
    build_witness_abcd,
    expectation,
    negativity,
    pauli_decompose,
    pauli_expand,
    witness_from_negative_subspace,
)
from noisent.errors import DimensionMismatch, NoNegativeEigenvalues, NonrealExpectation
from noisent.matrix_core import Bipartition
from noisent.protocols import CUT_A_C, CUT_AB_CD, DiagonalInputParams, four_qubit_protocol
from noisent.quantum_objects import DensityMatrix, random_density_matrix, random_unitary

from oracles import negativity_via_trace_norm, witness_tensor_formula

BELL = DensityMatrix.from_ket([1, 0, 0, 1])
ETA_GRID = np.round(np.linspace(0, 1, 21), 10)


def random_product_state(rng, n_left=2, n_right=2, rank=None):
    return random_density_matrix(n_left, rng, rank).tensor(random_density_matrix(n_right, rng, rank))


def depolarize(rho, lam):
    d = rho.dim
    return DensityMatrix((1 - lam) * rho.mat + lam * np.eye(d) / d, rho.n_qubits)


def test_negativity_examples(rng):
    assert negativity(BELL, CUT_A_C) == pytest.approx(0.5, abs=1e-12)
    for _ in range(10):
        assert negativity(random_product_state(rng, 1, 1), CUT_A_C) == 0.0
        assert negativity(random_product_state(rng, rank=1), CUT_AB_CD) == 0.0


def test_negativity_of_protocol_output():
    res = four_qubit_protocol(DiagonalInputParams(0.5, 1, 0), 0.6)
    assert abs(negativity(res.rho_out, CUT_AB_CD) - 0.3) < 1e-12


def test_negativity_matches_trace_norm_oracle(rng):
    for _ in range(30):
        rho = random_density_matrix(4, rng, rank=2)
        for cut in [{0, 1}, {0}, {0, 2}]:
            ref = negativity_via_trace_norm(rho.mat, [2] * 4, cut)
            assert abs(negativity(rho, Bipartition.qubits(4, cut)) - ref) < 1e-10


def test_negativity_zero_at_eta_zero_has_no_phantom():
    res = four_qubit_protocol(DiagonalInputParams(0.5, 1, 0), 0.0)
    assert negativity(res.rho_out, CUT_AB_CD) == 0.0


def test_negativity_invariant_under_local_unitaries(rng):
    for _ in range(30):
        rho = random_density_matrix(4, rng, rank=1)
        u = np.kron(random_unitary(4, rng), random_unitary(4, rng))
        rotated = DensityMatrix(u @ rho.mat @ u.conj().T, 4)
        assert abs(negativity(rotated, CUT_AB_CD) - negativity(rho, CUT_AB_CD)) < 1e-10


def test_witness_matches_tensor_formula():
    w = build_witness_abcd()
    assert np.max(np.abs(w.mat - witness_tensor_formula())) < 1e-15
    assert np.isclose(np.trace(w.mat).real, 2)
    # every Pauli string is covered by one of the three settings XZXZ, YZYZ, ZZZZ
    settings = ("XZXZ", "YZYZ", "ZZZZ")
    for s in w.settings():
        assert any(all(c in ("I", m) for c, m in zip(s, setting)) for setting in settings)


def test_witness_pauli_roundtrip():
    w = build_witness_abcd()
    assert np.max(np.abs(pauli_expand(w.pauli_terms) - w.mat)) < 1e-12
    assert sorted(pauli_decompose(w.mat), key=lambda t: t[1]) == sorted(w.pauli_terms, key=lambda t: t[1])


def test_witness_rejects_inconsistent_terms():
    with pytest.raises(ValueError):
        WitnessOperator(np.eye(2), ((0.5, "Z"),))


def test_witness_nonnegative_on_product_states(rng):
    w = build_witness_abcd()
    vals = [expectation(w, random_product_state(rng, rank=rng.integers(1, 5))) for _ in range(1000)]
    assert min(vals) >= -1e-12


@pytest.mark.parametrize("p", [0.25, 0.5, 0.75])
def test_witness_on_ideal_output(p):
    w = build_witness_abcd()
    for eta in ETA_GRID:
        res = four_qubit_protocol(DiagonalInputParams(p, 1, 0), eta)
        assert abs(expectation(w, res.rho_out) + eta / 2) < 1e-12


def test_expectation_examples():
    w = build_witness_abcd()
    assert expectation(w, DensityMatrix.maximally_mixed(4)) == pytest.approx(0.125, abs=1e-15)
    assert abs(expectation(w, four_qubit_protocol(DiagonalInputParams(), 0).rho_out)) < 1e-15
    assert expectation(w, four_qubit_protocol(DiagonalInputParams(0.3, 1, 0), 1).rho_out) == pytest.approx(-0.5, abs=1e-12)


def test_expectation_errors():
    with pytest.raises(DimensionMismatch):
        expectation(np.eye(2), DensityMatrix.maximally_mixed(2))
    with pytest.raises(NonrealExpectation):
        expectation(np.array([[0, 1], [0, 0]]), DensityMatrix.from_ket([1, 1j]))


def test_witness_from_negative_subspace_reduces_to_fixed_witness():
    rho = four_qubit_protocol(DiagonalInputParams(0.5, 1, 0), 0.5).rho_out
    w = witness_from_negative_subspace(rho, CUT_AB_CD)
    assert np.max(np.abs(w.mat - build_witness_abcd().mat)) < 1e-10


def test_witness_from_negative_subspace_bell():
    w = witness_from_negative_subspace(BELL, CUT_A_C)
    assert expectation(w, BELL) == pytest.approx(-0.5, abs=1e-12)


def test_witness_from_negative_subspace_random_npt(rng):
    found = 0
    while found < 100:
        rho = random_density_matrix(2, rng, rank=rng.integers(1, 3))
        n = negativity(rho, CUT_A_C)
        if n == 0:
            continue
        found += 1
        w = witness_from_negative_subspace(rho, CUT_A_C)
        assert abs(expectation(w, rho) + n) < 1e-10


def test_witness_from_negative_subspace_ppt_raises(rng):
    with pytest.raises(NoNegativeEigenvalues):
        witness_from_negative_subspace(random_product_state(rng, 1, 1), CUT_A_C)


@given(st.floats(0, 1), st.floats(0, 1), st.floats(0, 1), st.floats(0, 1), st.floats(0, 1))
def test_witness_lower_bounds_negativity(p, q, r, eta, lam):
    rho = depolarize(four_qubit_protocol(DiagonalInputParams(p, q, r), eta).rho_out, lam)
    assert negativity(rho, CUT_AB_CD) >= -expectation(build_witness_abcd(), rho) - 1e-10
