import numpy as np
import pytest
from numpy.testing import assert_allclose

from mvsf.errors import DomainError, SingularMatrix, SingularTransform
from mvsf.models.matrices import HermitianMatrix, LowerTriangular
from mvsf.models.params import MatrixTransform, TransformKind
from mvsf.services.hermitian import random_pd
from mvsf.services.jacobians import (
    apply_congruence,
    apply_linear,
    cholesky_jacobian,
    congruence_jacobian_aat,
    coords_to_hermitian,
    hermitian_to_coords,
    inverse_jacobian,
    inverse_jacobian_general,
    random_case,
    verify_jacobian_fd,
)


def test_linear_sandwich_jacobian():
    _, jac = apply_linear(np.eye(2), np.eye(3), np.zeros((2, 3)), np.ones((2, 3)))
    assert jac == pytest.approx(1.0)
    # |4|^1 |9|^1
    _, jac = apply_linear(np.array([[2]]), np.array([[3]]), np.zeros((1, 1)), np.array([[1 + 1j]]))
    assert jac == pytest.approx(36.0)
    # det(AA*) = 2, squared
    _, jac = apply_linear(np.diag([1 + 1j, 1]), np.eye(2), np.zeros((2, 2)), np.eye(2))
    assert jac == pytest.approx(4.0)


def test_linear_sandwich_rejects_singular_and_bad_shapes():
    with pytest.raises(SingularTransform):
        apply_linear(np.zeros((2, 2)), np.eye(2), np.zeros((2, 2)), np.eye(2))
    with pytest.raises(DomainError):
        apply_linear(np.eye(3), np.eye(2), np.zeros((2, 2)), np.eye(2))


def test_congruence_jacobian():
    X = HermitianMatrix.identity(2)
    Y, jac = apply_congruence(np.eye(2), X)
    assert jac == pytest.approx(1.0)
    assert_allclose(Y.entries, np.eye(2))

    Y, jac = apply_congruence(np.diag([2.0, 1.0]), X)
    assert jac == pytest.approx(16.0)
    assert_allclose(Y.entries, np.diag([4.0, 1.0]))

    _, jac = apply_congruence(np.array([[1 + 1j]]), HermitianMatrix.identity(1))
    assert jac == pytest.approx(2.0)


def test_congruence_forms_agree(rng):
    for p in (1, 2, 3):
        A = rng.standard_normal((p, p)) + 1j * rng.standard_normal((p, p))
        _, jac = apply_congruence(A, HermitianMatrix.identity(p))
        assert_allclose(jac, congruence_jacobian_aat(A, p), rtol=1e-10)


def test_cholesky_jacobian():
    assert cholesky_jacobian(LowerTriangular(np.eye(1))) == pytest.approx(2.0)
    assert cholesky_jacobian(LowerTriangular(np.eye(2))) == pytest.approx(4.0)
    # 2^2 * 2^3 * 3^1
    assert cholesky_jacobian(LowerTriangular(np.diag([2.0, 3.0]))) == pytest.approx(96.0)


def test_inverse_jacobian():
    assert inverse_jacobian(HermitianMatrix.identity(2)) == pytest.approx(1.0)
    assert inverse_jacobian(HermitianMatrix.diag([2.0])) == pytest.approx(0.25)
    assert inverse_jacobian(HermitianMatrix.diag([2.0, 1.0])) == pytest.approx(0.0625)
    with pytest.raises(SingularMatrix):
        inverse_jacobian(HermitianMatrix(np.array([[1, 1 + 0j], [1 - 0j, 1]])))


def test_inverse_jacobian_general():
    # |det(XX*)|^(-2p) = (4)^(-4) for X = diag(2, 1) treated as a general matrix
    assert inverse_jacobian_general(np.diag([2.0, 1.0])) == pytest.approx(4.0**-4)
    with pytest.raises(SingularMatrix):
        inverse_jacobian_general(np.zeros((2, 2)))


def test_hermitian_coordinates_have_p_squared_entries(pd_matrices):
    for X in pd_matrices:
        v = hermitian_to_coords(X.entries)
        assert v.shape == (X.p**2,)
        assert_allclose(coords_to_hermitian(v, X.p), X.entries)


def test_fd_identity_sandwich():
    X = np.array([[1 + 2j, 0.5], [-1j, 3.0]])
    check = verify_jacobian_fd(MatrixTransform(TransformKind.LINEAR_SANDWICH), X)
    assert check.analytic == pytest.approx(1.0)
    assert check.rel_err < 1e-8


def test_fd_congruence_example():
    t = MatrixTransform(TransformKind.HERMITIAN_CONGRUENCE, A=np.diag([2.0, 1.0]))
    check = verify_jacobian_fd(t, HermitianMatrix.identity(2))
    assert check.analytic == pytest.approx(16.0)
    assert check.rel_err < 1e-6


def test_fd_inverse_example():
    check = verify_jacobian_fd(MatrixTransform(TransformKind.INVERSE), HermitianMatrix.diag([2.0]))
    assert check.analytic == pytest.approx(0.25)
    assert check.rel_err < 1e-6


def test_fd_cholesky_accepts_factor_or_matrix():
    t = MatrixTransform(TransformKind.CHOLESKY_FACTOR)
    by_factor = verify_jacobian_fd(t, LowerTriangular(np.diag([2.0, 3.0])))
    by_matrix = verify_jacobian_fd(t, HermitianMatrix.diag([4.0, 9.0]))
    assert by_factor.analytic == pytest.approx(96.0)
    assert by_matrix.analytic == pytest.approx(96.0)
    assert by_factor.rel_err < 1e-6


def test_fd_step_range():
    with pytest.raises(DomainError):
        verify_jacobian_fd(MatrixTransform(TransformKind.INVERSE), HermitianMatrix.identity(1), h=1e-2)


@pytest.mark.parametrize("kind", list(TransformKind))
def test_fd_random_instances(kind, rng):
    worst = 0.0
    for _ in range(50):
        t, X = random_case(kind, rng)
        worst = max(worst, verify_jacobian_fd(t, X).rel_err)
    assert worst < 1e-5


def _complex_matrix(rng, p):
    return rng.standard_normal((p, p)) + 1j * rng.standard_normal((p, p))


@pytest.mark.parametrize("p", [1, 2, 3])
def test_congruence_jacobians_compose(p, rng):
    for _ in range(10):
        A, A2 = _complex_matrix(rng, p), _complex_matrix(rng, p)
        X = random_pd(p, rng)
        Y, jac = apply_congruence(A, X)
        Z, jac2 = apply_congruence(A2, Y)
        direct, jac_direct = apply_congruence(A2 @ A, X)
        assert_allclose(jac * jac2, jac_direct, rtol=1e-10)
        assert_allclose(Z.entries, direct.entries, atol=1e-10 * np.abs(direct.entries).max())


def test_linear_jacobians_compose(rng):
    m, n = 2, 3
    X = rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
    A, A2 = _complex_matrix(rng, m), _complex_matrix(rng, m)
    B, B2 = _complex_matrix(rng, n), _complex_matrix(rng, n)
    zero = np.zeros((m, n))
    Y, jac = apply_linear(A, B, zero, X)
    _, jac2 = apply_linear(A2, B2, zero, Y)
    _, jac_direct = apply_linear(A2 @ A, B @ B2, zero, X)
    assert_allclose(jac * jac2, jac_direct, rtol=1e-10)
