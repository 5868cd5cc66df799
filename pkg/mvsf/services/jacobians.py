"""Jacobians of complex matrix transformations and their finite-difference check.

Coordinates follow the wedge-product convention: an m x n complex matrix is
2mn reals (real parts, then imaginary parts), a p x p Hermitian matrix is p^2
reals (diagonal, then re/im of the strictly lower entries) and a Cholesky
factor is p^2 reals laid out the same way.
"""

import logging
import math
from typing import Callable, NamedTuple

import numpy as np

from mvsf.errors import DegenerateJacobian, DomainError, SingularMatrix, SingularTransform
from mvsf.models.matrices import HermitianMatrix, LowerTriangular
from mvsf.models.params import MatrixTransform, TransformKind
from mvsf.services.hermitian import cholesky, random_pd, random_unitary

logger = logging.getLogger(__name__)

SINGULAR_RTOL = 1e-14
FD_STEP_RANGE = (1e-7, 1e-3)


class FdCheck(NamedTuple):
    analytic: float
    numeric: float
    rel_err: float


def _abs_det(a: np.ndarray) -> float:
    return float(abs(np.linalg.det(a)))


def _require_nonsingular(a: np.ndarray, name: str) -> float:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise SingularTransform(f"{name} must be square, got shape {a.shape}")
    det = _abs_det(a)
    bound = float(np.prod(np.linalg.norm(a, axis=1)))
    if bound == 0 or det < SINGULAR_RTOL * bound:
        raise SingularTransform(f"{name} is singular")
    return det


# Coordinates

def rect_to_coords(x: np.ndarray) -> np.ndarray:
    return np.concatenate([x.real.ravel(), x.imag.ravel()])


def coords_to_rect(v: np.ndarray, shape: tuple[int, int]) -> np.ndarray:
    k = shape[0] * shape[1]
    return (v[:k] + 1j * v[k:]).reshape(shape)


def hermitian_to_coords(x: np.ndarray) -> np.ndarray:
    rows, cols = np.tril_indices(x.shape[0], k=-1)
    lower = x[rows, cols]
    return np.concatenate([np.diag(x).real, lower.real, lower.imag])


def coords_to_hermitian(v: np.ndarray, p: int) -> np.ndarray:
    rows, cols = np.tril_indices(p, k=-1)
    m = len(rows)
    x = np.diag(v[:p]).astype(complex)
    x[rows, cols] = v[p:p + m] + 1j * v[p + m:]
    x[cols, rows] = np.conj(x[rows, cols])
    return x


def triangular_to_coords(t: np.ndarray) -> np.ndarray:
    rows, cols = np.tril_indices(t.shape[0], k=-1)
    lower = t[rows, cols]
    return np.concatenate([np.diag(t).real, lower.real, lower.imag])


def coords_to_triangular(v: np.ndarray, p: int) -> np.ndarray:
    rows, cols = np.tril_indices(p, k=-1)
    m = len(rows)
    t = np.diag(v[:p]).astype(complex)
    t[rows, cols] = v[p:p + m] + 1j * v[p + m:]
    return t


# Lemmas

def apply_linear(
    A: np.ndarray, B: np.ndarray, C: np.ndarray, X: np.ndarray
) -> tuple[np.ndarray, float]:
    """Y = A X B + C with dY = |det(AA*)|^n |det(BB*)|^m dX."""
    A, B, C, X = (np.asarray(a, dtype=complex) for a in (A, B, C, X))
    m, n = X.shape
    det_a = _require_nonsingular(A, "A")
    det_b = _require_nonsingular(B, "B")
    if A.shape[0] != m or B.shape[0] != n or C.shape != (m, n):
        raise DomainError(f"shapes do not conform: A {A.shape}, X {X.shape}, B {B.shape}, C {C.shape}")
    jac = det_a ** (2 * n) * det_b ** (2 * m)
    return A @ X @ B + C, jac


def apply_congruence(A: np.ndarray, X: HermitianMatrix) -> tuple[HermitianMatrix, float]:
    """Y = A X A* with dY = |det A|^(2p) dX."""
    A = np.asarray(A, dtype=complex)
    p = X.p
    if A.shape != (p, p):
        raise DomainError(f"A must be {p}x{p}, got {A.shape}")
    det_a = _require_nonsingular(A, "A")
    return HermitianMatrix(A @ X.entries @ A.conj().T), det_a ** (2 * p)


def congruence_jacobian_aat(A: np.ndarray, p: int) -> float:
    """The |det(AA*)|^p form of the congruence Jacobian."""
    A = np.asarray(A, dtype=complex)
    return _abs_det(A @ A.conj().T) ** p


def cholesky_jacobian(T: LowerTriangular) -> float:
    """X = T T* with dX = 2^p prod t_jj^(2(p-j)+1) dT."""
    p = T.p
    exponents = 2 * (p - np.arange(1, p + 1)) + 1
    return float(2.0**p * np.prod(T.diagonal**exponents))


def inverse_jacobian(X: HermitianMatrix) -> float:
    """Y = X^-1 with dY = |det X|^(-2p) dX for Hermitian X."""
    det = _abs_det(X.entries)
    bound = float(np.prod(np.linalg.norm(X.entries, axis=1)))
    if bound == 0 or det < SINGULAR_RTOL * bound:
        raise SingularMatrix("inverse Jacobian of a singular matrix")
    return det ** (-2 * X.p)


def inverse_jacobian_general(X: np.ndarray) -> float:
    """|det(XX*)|^(-2p) for a general nonsingular X with independent complex entries."""
    X = np.asarray(X, dtype=complex)
    p = X.shape[0]
    try:
        _require_nonsingular(X, "X")
    except SingularTransform as e:
        raise SingularMatrix(str(e)) from e
    return _abs_det(X @ X.conj().T) ** (-2 * p)


# Finite-difference verification

def _coordinate_map(
    t: MatrixTransform, X
) -> tuple[Callable[[np.ndarray], np.ndarray], np.ndarray, float]:
    """(map on real coordinates, base point, analytic Jacobian) for one transform."""
    if t.kind is TransformKind.LINEAR_SANDWICH:
        x = np.asarray(X.entries if isinstance(X, HermitianMatrix) else X, dtype=complex)
        m, n = x.shape
        A = np.eye(m, dtype=complex) if t.A is None else t.A
        B = np.eye(n, dtype=complex) if t.B is None else t.B
        C = np.zeros((m, n), dtype=complex) if t.C is None else t.C
        _, jac = apply_linear(A, B, C, x)
        return (lambda v: rect_to_coords(A @ coords_to_rect(v, (m, n)) @ B + C)), rect_to_coords(x), jac

    if t.kind is TransformKind.HERMITIAN_CONGRUENCE:
        p = X.p
        A = np.asarray(t.A, dtype=complex)
        _, jac = apply_congruence(A, X)
        Ah = A.conj().T
        return (lambda v: hermitian_to_coords(A @ coords_to_hermitian(v, p) @ Ah)), hermitian_to_coords(X.entries), jac

    if t.kind is TransformKind.CHOLESKY_FACTOR:
        T = X if isinstance(X, LowerTriangular) else cholesky(X)
        p = T.p

        def factor_map(v):
            tt = coords_to_triangular(v, p)
            return hermitian_to_coords(tt @ tt.conj().T)

        return factor_map, triangular_to_coords(T.entries), cholesky_jacobian(T)

    if t.kind is TransformKind.INVERSE:
        p = X.p
        jac = inverse_jacobian(X)
        return (lambda v: hermitian_to_coords(np.linalg.inv(coords_to_hermitian(v, p)))), hermitian_to_coords(X.entries), jac

    raise DomainError(f"unknown transform kind: {t.kind}")


def verify_jacobian_fd(t: MatrixTransform, X, h: float = 1e-5) -> FdCheck:
    """Compare the analytic Jacobian with |det| of a central-difference Jacobian matrix."""
    lo, hi = FD_STEP_RANGE
    if not lo <= h <= hi:
        raise DomainError(f"finite-difference step must lie in [{lo}, {hi}], got {h}")

    fmap, base, analytic = _coordinate_map(t, X)
    dim = base.size
    jacobian = np.empty((dim, dim))
    for k in range(dim):
        step = np.zeros(dim)
        step[k] = h
        jacobian[:, k] = (fmap(base + step) - fmap(base - step)) / (2 * h)

    sign, logdet = np.linalg.slogdet(jacobian)
    if sign == 0 or not math.isfinite(logdet) or logdet < math.log(np.finfo(float).tiny):
        raise DegenerateJacobian(f"finite-difference Jacobian of {t.kind.value} is degenerate")
    numeric = math.exp(logdet)
    rel_err = abs(analytic - numeric) / analytic
    logger.debug(f"{t.kind.value}: analytic={analytic:.6g} numeric={numeric:.6g} rel_err={rel_err:.2e}")
    return FdCheck(analytic, numeric, rel_err)


def _random_nonsingular(n: int, rng: np.random.Generator) -> np.ndarray:
    """U diag(s) V* with singular values s in (0.5, 2)."""
    return (random_unitary(n, rng) * rng.uniform(0.5, 2.0, size=n)) @ random_unitary(n, rng).conj().T


def random_case(kind: TransformKind, rng: np.random.Generator, max_order: int = 3):
    """A well-conditioned random (transform, base point) pair for one lemma."""
    p = int(rng.integers(1, max_order + 1))
    if kind is TransformKind.LINEAR_SANDWICH:
        n = int(rng.integers(1, max_order + 1))
        X = rng.standard_normal((p, n)) + 1j * rng.standard_normal((p, n))
        C = rng.standard_normal((p, n)) + 1j * rng.standard_normal((p, n))
        t = MatrixTransform(kind, A=_random_nonsingular(p, rng), B=_random_nonsingular(n, rng), C=C)
        return t, X
    if kind is TransformKind.HERMITIAN_CONGRUENCE:
        return MatrixTransform(kind, A=_random_nonsingular(p, rng)), random_pd(p, rng)
    if kind is TransformKind.CHOLESKY_FACTOR:
        return MatrixTransform(kind), cholesky(random_pd(p, rng))
    if kind is TransformKind.INVERSE:
        return MatrixTransform(kind), random_pd(p, rng)
    raise DomainError(f"unknown transform kind: {kind}")
