import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from numrad.errors import NotSquare, NotUnit, ToleranceTooSmall
from numrad.linalg import operator_norm
from numrad.numrange import (
    numerical_radius,
    numerical_range_boundary,
    radius_dense_oracle,
    radius_lower_bound_sampling,
    rayleigh,
    support_function,
)
from strategies import matrices, scaled_matrices

ORACLE_N = 20000


def oracle_window(A, N=ORACLE_N):
    """``[oracle, oracle + pi ||A|| / N]`` contains w(A)."""
    lo = radius_dense_oracle(A, N)
    return lo, lo + math.pi * operator_norm(A) / N


# --- closed forms --------------------------------------------------------------


def test_jordan_block(jordan):
    est = numerical_radius(jordan)
    assert abs(est.value - 0.5) <= 1e-8
    assert est.value <= 0.5 + 1e-15 and est.upper >= 0.5 - 1e-15


def test_identity():
    est = numerical_radius(np.eye(3))
    assert est.value == pytest.approx(1.0, abs=1e-14)
    assert est.certified_error <= 1e-8


def test_zero_matrix():
    est = numerical_radius(np.zeros((3, 3)))
    assert est.value == 0.0 and est.certified_error == 0.0


def test_scalar_matrix():
    assert numerical_radius([[3 - 4j]]).value == pytest.approx(5.0, abs=1e-8)


@pytest.mark.parametrize("n", [3, 5])
def test_jordan_block_larger(n):
    # w(J_n) = cos(pi / (n + 1))
    J = np.diag(np.ones(n - 1), 1)
    assert numerical_radius(J).value == pytest.approx(math.cos(math.pi / (n + 1)), abs=1e-8)


@given(matrices("hermitian"))
def test_hermitian_radius_is_norm(H):
    est = numerical_radius(H)
    assert abs(est.value - operator_norm(H)) <= 1e-8 * max(1.0, operator_norm(H))


@given(matrices("normal"))
def test_normal_radius_is_spectral_radius(A):
    rho = float(np.abs(np.linalg.eigvals(A)).max())
    assert abs(numerical_radius(A).value - rho) <= 1e-8 * max(1.0, rho)


# --- certificate -----------------------------------------------------------------


@given(matrices("ginibre", max_dim=6))
def test_enclosure_contains_oracle(A):
    est = numerical_radius(A)
    lo, hi = oracle_window(A)
    slop = 1e-12 * operator_norm(A)
    # both intervals contain w(A), so they overlap
    assert est.upper + slop >= lo and est.value <= hi + slop
    assert est.value >= lo - 1e-8
    assert est.certified_error <= 1e-8


@given(matrices("ginibre", max_dim=5))
def test_witness_realises_value(A):
    est = numerical_radius(A)
    assert abs(np.linalg.norm(est.witness) - 1) < 1e-12
    z = rayleigh(A, est.witness / np.linalg.norm(est.witness))
    assert abs(z) == pytest.approx(est.value, abs=1e-10 * max(1.0, operator_norm(A)))


@given(scaled_matrices("ginibre"))
def test_sandwich(A):
    w = numerical_radius(A, 1e-8 * max(1.0, operator_norm(A))).value
    nrm = operator_norm(A)
    assert nrm / 2 - 1e-8 * max(1, nrm) <= w <= nrm + 1e-8 * max(1, nrm)


@given(matrices("ginibre"), st.floats(0, 2 * math.pi))
def test_rotation_invariance(A, phi):
    a = numerical_radius(A).value
    b = numerical_radius(np.exp(1j * phi) * A).value
    assert abs(a - b) <= 2e-8


@given(matrices("ginibre", max_dim=5), matrices("unitary", min_dim=5, max_dim=5))
def test_unitary_similarity_invariance(A, U):
    n = A.shape[0]
    U = U[:n, :n] if n == 5 else np.linalg.qr(U[:n, :n] + np.eye(n))[0]
    a = numerical_radius(A).value
    b = numerical_radius(U.conj().T @ A @ U).value
    assert abs(a - b) <= 3e-8


def test_tolerance_floor():
    with pytest.raises(ToleranceTooSmall):
        numerical_radius(np.eye(2), 1e-13)


def test_tolerance_below_eigen_margin():
    with pytest.raises(ToleranceTooSmall):
        numerical_radius(1e6 * np.ones((4, 4)), 1e-11)


def test_rejects_non_square():
    with pytest.raises(NotSquare):
        numerical_radius(np.zeros((2, 3)))


# --- oracle, sampling, boundary --------------------------------------------------


def test_dense_oracle_jordan(jordan):
    assert radius_dense_oracle(jordan, 10**4) == pytest.approx(0.5, abs=1e-15)


@given(matrices("ginibre", max_dim=4), st.integers(4, 60))
def test_dense_oracle_even_odd_consistent(A, N):
    direct = float(np.max(support_function(A, np.arange(N) * (2 * np.pi / N))))
    assert radius_dense_oracle(A, N) == pytest.approx(max(direct, 0.0), abs=1e-12 * max(1, operator_norm(A)))


def test_dense_oracle_rejects_small_n():
    with pytest.raises(ValueError):
        radius_dense_oracle(np.eye(2), 3)


@given(matrices("ginibre", max_dim=5))
def test_sampling_is_lower_bound(A):
    est = numerical_radius(A)
    lb = radius_lower_bound_sampling(A, 200, seed=1)
    assert lb <= est.upper + 1e-12
    # the coarse-angle eigenvector alone is within the Lipschitz gap of w(A)
    assert lb >= est.value - math.pi * operator_norm(A) / 64


def test_rayleigh_requires_unit():
    with pytest.raises(NotUnit):
        rayleigh(np.eye(2), [1.0, 1.0])
    assert rayleigh(np.diag([2.0, 5.0]), [0, 1]) == 5.0


def test_boundary_identity():
    pts = numerical_range_boundary(np.eye(2), 8)
    assert np.allclose(pts, 1.0)


def test_boundary_jordan(jordan):
    pts = numerical_range_boundary(jordan, 360)
    assert np.abs(pts).max() == pytest.approx(0.5, abs=1e-6)
    assert np.allclose(np.abs(pts), 0.5, atol=1e-12)


@given(matrices("ginibre", max_dim=5))
def test_boundary_points_on_supporting_lines(A):
    m = 64
    pts = numerical_range_boundary(A, m)
    thetas = np.arange(m) * (2 * np.pi / m)
    proj = (np.exp(1j * thetas) * pts).real
    assert np.allclose(proj, support_function(A, thetas), atol=1e-10 * max(1, operator_norm(A)))


def test_boundary_rejects_few_points():
    with pytest.raises(ValueError):
        numerical_range_boundary(np.eye(2), 2)
