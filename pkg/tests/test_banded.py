import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from hoc7.banded import BandedLU, BandedMatrix, band_matmul, polyval_banded
from hoc7.errors import DomainError, NumericalFailure


def random_band(rng, n, lower, upper, dominant=False):
    a = np.zeros((n, n))
    for off in range(-lower, upper + 1):
        if abs(off) < n:
            a += np.diag(rng.standard_normal(n - abs(off)), off)
    if dominant:
        a += np.diag(np.abs(a).sum(axis=1) + 1)
    return a


@pytest.mark.parametrize("n,lower,upper", [(1, 0, 0), (5, 2, 2), (7, 1, 3), (3, 2, 2), (10, 0, 4)])
def test_dense_round_trip(n, lower, upper):
    rng = np.random.default_rng(n + lower + upper)
    a = random_band(rng, n, lower, upper)
    b = BandedMatrix.from_dense(a, lower, upper)
    np.testing.assert_array_equal(b.to_dense(), a)
    x = rng.standard_normal(n)
    np.testing.assert_allclose(b.matvec(x), a @ x, rtol=1e-13, atol=1e-13)
    np.testing.assert_allclose(b.rmatvec(x), x @ a, rtol=1e-13, atol=1e-13)


def test_storage_is_read_only_and_padded():
    b = BandedMatrix(np.ones((4, 5)), 2, 2)
    assert not b.bands.flags.writeable
    # slots outside the matrix are zeroed
    assert b.bands[0, 0] == 0 and b.bands[0, 1] == 0 and b.bands[-1, -1] == 0
    with pytest.raises(ValueError):
        b.bands[1, 1] = 3.0


def test_bad_shape_rejected():
    with pytest.raises(DomainError):
        BandedMatrix(np.ones((4, 4)), 2, 2)
    with pytest.raises(DomainError):
        BandedMatrix.identity(3).matvec(np.ones(4))


def test_diagonal_access():
    a = np.arange(25.0).reshape(5, 5)
    b = BandedMatrix.from_dense(np.triu(np.tril(a, 1), -2), 2, 1)
    np.testing.assert_array_equal(b.diagonal(-2), np.diagonal(a, -2))
    np.testing.assert_array_equal(b.diagonal(1), np.diagonal(a, 1))
    np.testing.assert_array_equal(b.diagonal(2), np.zeros(3))


@given(st.integers(min_value=1, max_value=12), st.integers(0, 3), st.integers(0, 3),
       st.integers(0, 3), st.integers(0, 3), st.integers(0, 2**32 - 1))
@settings(max_examples=60, deadline=None)
def test_band_matmul_matches_dense(n, l1, u1, l2, u2, seed):
    rng = np.random.default_rng(seed)
    a, b = random_band(rng, n, l1, u1), random_band(rng, n, l2, u2)
    c = band_matmul(BandedMatrix.from_dense(a, l1, u1), BandedMatrix.from_dense(b, l2, u2))
    assert c.lower <= max(l1 + l2, 0) and c.upper <= max(u1 + u2, 0)
    np.testing.assert_allclose(c.to_dense(), a @ b, rtol=1e-12, atol=1e-12)


def test_add_and_scale():
    rng = np.random.default_rng(1)
    a, b = random_band(rng, 6, 1, 0), random_band(rng, 6, 0, 2)
    s = BandedMatrix.from_dense(a, 1, 0) + BandedMatrix.from_dense(b, 0, 2).scaled(3.0)
    np.testing.assert_allclose(s.to_dense(), a + 3 * b)


def test_polyval_matches_dense_horner():
    rng = np.random.default_rng(2)
    a = random_band(rng, 9, 2, 2)
    coeffs = [3.0, -1.0, 0.5, 0.25]
    expected = sum(c * np.linalg.matrix_power(a, k) for k, c in enumerate(coeffs))
    got = polyval_banded(coeffs, BandedMatrix.from_dense(a, 2, 2))
    assert (got.lower, got.upper) == (6, 6)
    np.testing.assert_allclose(got.to_dense(), expected, rtol=1e-12, atol=1e-10)


@given(st.integers(min_value=1, max_value=40), st.integers(0, 4), st.integers(0, 4), st.integers(0, 2**32 - 1))
@settings(max_examples=60, deadline=None)
def test_lu_solve_matches_dense(n, lower, upper, seed):
    rng = np.random.default_rng(seed)
    a = random_band(rng, n, lower, upper, dominant=True)
    rhs = rng.standard_normal(n)
    x = BandedLU(BandedMatrix.from_dense(a, lower, upper)).solve(rhs)
    np.testing.assert_allclose(a @ x, rhs, rtol=1e-10, atol=1e-10)


def test_lu_needs_pivoting():
    # zero leading diagonal entry: solvable only with row exchanges
    a = np.array([[0.0, 1.0, 0.0], [1.0, 0.0, 1.0], [0.0, 1.0, 2.0]])
    x = BandedLU(BandedMatrix.from_dense(a, 1, 1)).solve(np.array([1.0, 2.0, 3.0]))
    np.testing.assert_allclose(a @ x, [1.0, 2.0, 3.0], atol=1e-14)


def test_lu_singular_raises():
    with pytest.raises(NumericalFailure):
        BandedLU(BandedMatrix(np.zeros((4, 3)), 1, 1))


@given(arrays(np.float64, 8, elements=st.floats(-1e3, 1e3)))
@settings(max_examples=30, deadline=None)
def test_identity_is_neutral(x):
    eye = BandedMatrix.identity(8)
    np.testing.assert_array_equal(eye.matvec(x), x)
