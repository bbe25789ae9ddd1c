import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinengine.linalg import (
    DimensionMismatchError,
    NonHermitianError,
    hermitian_eigendecompose,
    kron,
    partial_trace,
    trace_product,
)
from spinengine.medium import WorkingMedium, build_hamiltonian

from conftest import random_hermitian


def test_diagonal_input():
    sd = hermitian_eigendecompose(np.diag([2.0, -1.0, 0.0]))
    np.testing.assert_allclose(sd.eigenvalues, [-1, 0, 2])
    np.testing.assert_allclose(np.abs(sd.eigenvectors), [[0, 0, 1], [1, 0, 0], [0, 1, 0]])


def test_pauli_x():
    sd = hermitian_eigendecompose([[0, 1], [1, 0]])
    np.testing.assert_allclose(sd.eigenvalues, [-1, 1], atol=1e-15)
    np.testing.assert_allclose(sd.eigenvectors[:, 1], np.array([1, 1]) / np.sqrt(2))


def test_random_12x12_reconstruction(rng):
    a = random_hermitian(rng, 12)
    sd = hermitian_eigendecompose(a)
    assert np.linalg.norm(sd.reconstruct() - a) < 1e-10 * np.linalg.norm(a)
    assert np.all(np.diff(sd.eigenvalues) >= 0)
    v = sd.eigenvectors
    assert np.max(np.abs(v.conj().T @ v - np.eye(12))) < 1e-12
    np.testing.assert_allclose(sd.eigenvalues, np.linalg.eigvalsh(a), atol=1e-12)


def test_phase_convention(rng):
    sd = hermitian_eigendecompose(random_hermitian(rng, 6))
    for col in sd.eigenvectors.T:
        first = col[np.argmax(np.abs(col) > 1e-8)]
        assert abs(first.imag) < 1e-14 and first.real > 0


def test_deterministic_degenerate_basis():
    h = build_hamiltonian(WorkingMedium("1/2", "1/2", 0.25), 1.0)  # B = 4J crossing
    first = hermitian_eigendecompose(h)
    second = hermitian_eigendecompose(h.copy())
    np.testing.assert_array_equal(first.eigenvectors, second.eigenvectors)
    zero = hermitian_eigendecompose(np.zeros((3, 3)))
    # ascending lexicographic order of the columns: e3 < e2 < e1
    np.testing.assert_allclose(zero.eigenvectors, np.eye(3)[:, ::-1])


def test_non_hermitian_rejected():
    with pytest.raises(NonHermitianError):
        hermitian_eigendecompose([[0, 1], [0, 0]])


def test_kron_examples():
    np.testing.assert_array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))
    x = np.array([[0, 1], [1, 0]])
    np.testing.assert_array_equal(kron(x, np.eye(2)), np.block([[0 * np.eye(2), np.eye(2)], [np.eye(2), 0 * np.eye(2)]]))
    z = np.diag([1, -1])
    np.testing.assert_array_equal(kron(z, z), np.diag([1, -1, -1, 1]))


def test_kron_index_layout(rng):
    a, b = rng.normal(size=(2, 3)), rng.normal(size=(4, 2))
    k = kron(a, b)
    assert k.shape == (8, 6)
    assert k[1 * 4 + 3, 2 * 2 + 1] == a[1, 2] * b[3, 1]


def test_trace_product_examples():
    assert trace_product(np.eye(4), np.eye(4)) == 4
    assert trace_product(np.diag([1, 2]), np.diag([3, 4])) == 11
    h = build_hamiltonian(WorkingMedium("1/2", "1/2", 1.0), 1.0)
    assert abs(trace_product(np.eye(4) / 4, h)) < 1e-14


def test_trace_product_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        trace_product(np.eye(2), np.eye(3))


def test_partial_trace_examples():
    np.testing.assert_allclose(partial_trace(np.eye(4) / 4, 2, 2, "A"), np.eye(2) / 2)
    ket = np.zeros(4)
    ket[0] = 1
    np.testing.assert_allclose(partial_trace(np.outer(ket, ket), 2, 2, "B"), np.diag([1, 0]))
    singlet = np.array([0, 1, -1, 0]) / np.sqrt(2)
    np.testing.assert_allclose(partial_trace(np.outer(singlet, singlet), 2, 2, "A"), np.eye(2) / 2)


def test_partial_trace_keeps_the_right_factor(rng):
    a, b = random_hermitian(rng, 2), random_hermitian(rng, 3)
    np.testing.assert_allclose(partial_trace(np.kron(a, b), 2, 3, "A"), a * np.trace(b))
    np.testing.assert_allclose(partial_trace(np.kron(a, b), 2, 3, "B"), b * np.trace(a))
    with pytest.raises(DimensionMismatchError):
        partial_trace(np.eye(5), 2, 3, "A")


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 16), st.integers(0, 2**32 - 1))
def test_eigendecomposition_properties(n, seed):
    a = random_hermitian(np.random.default_rng(seed), n)
    sd = hermitian_eigendecompose(a)
    assert abs(sd.eigenvalues.sum() - np.trace(a).real) < 1e-10
    assert np.max(np.abs(sd.eigenvectors.conj().T @ sd.eigenvectors - np.eye(n))) < 1e-12
    assert np.linalg.norm(sd.reconstruct() - a) < 1e-10 * max(1.0, np.linalg.norm(a))


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_trace_identities(da, db, seed):
    rng = np.random.default_rng(seed)
    a, b = random_hermitian(rng, da * db), random_hermitian(rng, da * db)
    assert abs(trace_product(a, b) - trace_product(b, a)) < 1e-12
    reduced = partial_trace(a, da, db, "A")
    assert abs(np.trace(reduced) - np.trace(a)) < 1e-12
