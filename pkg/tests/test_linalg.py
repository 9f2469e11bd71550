import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from unruhsim import linalg
from unruhsim.errors import DimensionMismatch, NotHermitian

I2 = np.eye(2, dtype=complex)
I3 = np.eye(3, dtype=complex)
SZ = np.diag([1.0, -1.0]).astype(complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)


def _complex_matrices(n):
    finite = st.floats(-1.0, 1.0, allow_nan=False)
    shape = (n, n)
    return st.builds(
        lambda re, im: re + 1j * im,
        hnp.arrays(np.float64, shape, elements=finite),
        hnp.arrays(np.float64, shape, elements=finite),
    )


def test_kron_identities():
    np.testing.assert_array_equal(linalg.kron(I2, I3), np.eye(6))
    np.testing.assert_array_equal(
        linalg.kron(np.diag([1.0, 2.0]), I2), np.diag([1.0, 1.0, 2.0, 2.0])
    )


def test_kron_sigma_z_with_projector():
    # hand expansion of the six entries
    got = linalg.kron(SZ, np.diag([1.0, 0.0, 0.0]))
    np.testing.assert_array_equal(got, np.diag([1.0, 0, 0, -1.0, 0, 0]))


@settings(max_examples=50)
@given(_complex_matrices(2), _complex_matrices(2), _complex_matrices(3))
def test_kron_associative(a, b, c):
    left = linalg.kron(linalg.kron(a, b), c)
    right = linalg.kron(a, linalg.kron(b, c))
    assert linalg.max_abs_diff(left, right) <= 1e-12


def test_dagger_examples():
    np.testing.assert_array_equal(linalg.dagger(I3), I3)
    m = np.array([[0, 1j], [0, 0]], dtype=complex)
    np.testing.assert_array_equal(linalg.dagger(m), np.array([[0, 0], [-1j, 0]]))


@settings(max_examples=50)
@given(_complex_matrices(3))
def test_dagger_involution(a):
    assert linalg.max_abs_diff(linalg.dagger(linalg.dagger(a)), a) == 0.0


@settings(max_examples=50)
@given(_complex_matrices(3), _complex_matrices(3))
def test_trace_cyclicity(a, b):
    t1 = linalg.trace(linalg.mat_mul(a, b))
    t2 = linalg.trace(linalg.mat_mul(b, a))
    assert abs(t1 - t2) <= 1e-12


def test_elementwise_ops():
    assert linalg.trace(np.eye(6)) == 6
    np.testing.assert_array_equal(linalg.mat_mul(I2, SX), SX)
    a = np.arange(4, dtype=complex).reshape(2, 2)
    assert linalg.max_abs_diff(a, a) == 0.0
    np.testing.assert_array_equal(linalg.add(a, a), 2 * a)
    np.testing.assert_array_equal(linalg.scale(a, 2.0), 2 * a)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        linalg.mat_mul(I2, I3)
    with pytest.raises(DimensionMismatch):
        linalg.add(I2, I3)
    with pytest.raises(DimensionMismatch):
        linalg.max_abs_diff(I2, I3)
    with pytest.raises(DimensionMismatch):
        linalg.trace(np.ones((2, 3)))


def test_hermitian_eigenvalues_examples():
    np.testing.assert_allclose(
        linalg.hermitian_eigenvalues(np.diag([3.0, 1.0, 2.0])), [1, 2, 3]
    )
    np.testing.assert_allclose(linalg.hermitian_eigenvalues(SX), [-1, 1])
    c = np.array([[0, 0.5], [0.5, 0]], dtype=complex)
    np.testing.assert_allclose(linalg.hermitian_eigenvalues(c), [-0.5, 0.5])


def test_not_hermitian_rejected():
    with pytest.raises(NotHermitian):
        linalg.hermitian_eigenvalues(np.array([[0, 1], [0, 0]], dtype=complex))


@settings(max_examples=50)
@given(hnp.arrays(np.float64, (4,), elements=st.floats(-5, 5, allow_nan=False)))
def test_diagonal_eigenvalues_exact(d):
    got = linalg.hermitian_eigenvalues(np.diag(d).astype(complex))
    np.testing.assert_allclose(got, np.sort(d), atol=1e-14)


@settings(max_examples=50)
@given(_complex_matrices(4), st.floats(-2, 2, allow_nan=False))
def test_eigenvalue_sum_and_shift(m, alpha):
    h = m + linalg.dagger(m)
    eig = linalg.hermitian_eigenvalues(h)
    assert abs(eig.sum() - linalg.trace(h).real) <= 1e-10
    shifted = linalg.hermitian_eigenvalues(h + alpha * np.eye(4))
    np.testing.assert_allclose(shifted, eig + alpha, atol=1e-10)
