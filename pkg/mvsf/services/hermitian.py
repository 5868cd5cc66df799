"""Hermitian positive definite matrix operations.

Single matrices go through the value types in mvsf.models.matrices; the
``batch_*`` helpers work on raw stacks of shape (n, p, p) for the samplers.
"""

import numpy as np

from mvsf.errors import NotPositiveDefinite, SingularMatrix
from mvsf.models.matrices import HermitianMatrix, LowerTriangular, SymmetricMatrix

PIVOT_RTOL = 1e-14
SINGULAR_RTOL = 1e-14


def abs_det(X: HermitianMatrix | SymmetricMatrix) -> float:
    """|det(X)| = sqrt(b^2 + c^2) for det(X) = b + ic."""
    return float(abs(np.linalg.det(X.entries)))


def _cholesky_or_none(a: np.ndarray) -> np.ndarray | None:
    diag = np.diag(a).real
    top = float(np.max(diag))
    if top <= 0:
        return None
    try:
        t = np.linalg.cholesky(a)
    except np.linalg.LinAlgError:
        return None
    # Pivot test: t_jj^2 is the j-th Schur-complement pivot.
    if np.any(np.diag(t).real ** 2 <= PIVOT_RTOL * top):
        return None
    t = np.array(t, dtype=complex)
    np.fill_diagonal(t, np.diag(t).real)
    return t


def is_positive_definite(X: HermitianMatrix | SymmetricMatrix) -> bool:
    return _cholesky_or_none(X.entries) is not None


def cholesky(X: HermitianMatrix) -> LowerTriangular:
    """The unique X = T T* with T lower triangular, real positive diagonal."""
    t = _cholesky_or_none(X.entries)
    if t is None:
        raise NotPositiveDefinite("Cholesky pivot is not positive")
    return LowerTriangular(t)


def _check_nonsingular(a: np.ndarray) -> None:
    # Hadamard: |det A| <= prod of row norms, so the ratio is a scale-free measure.
    bound = float(np.prod(np.linalg.norm(a, axis=1)))
    if bound == 0 or abs(np.linalg.det(a)) < SINGULAR_RTOL * bound:
        raise SingularMatrix("matrix is numerically singular")


def inverse(X: HermitianMatrix) -> HermitianMatrix:
    _check_nonsingular(X.entries)
    y = np.linalg.inv(X.entries)
    return HermitianMatrix(0.5 * (y + y.conj().T))


def pd_sqrt(X: HermitianMatrix) -> HermitianMatrix:
    """Hermitian S > O with S S = X."""
    if not is_positive_definite(X):
        raise NotPositiveDefinite("square root needs a positive definite matrix")
    w, v = np.linalg.eigh(X.entries)
    s = (v * np.sqrt(w)) @ v.conj().T
    return HermitianMatrix(0.5 * (s + s.conj().T))


def pd_inv_sqrt(X: HermitianMatrix) -> HermitianMatrix:
    if not is_positive_definite(X):
        raise NotPositiveDefinite("inverse square root needs a positive definite matrix")
    w, v = np.linalg.eigh(X.entries)
    s = (v / np.sqrt(w)) @ v.conj().T
    return HermitianMatrix(0.5 * (s + s.conj().T))


def eigenvalues(X: HermitianMatrix) -> np.ndarray:
    return np.linalg.eigvalsh(X.entries)


def spectral_norm(X: HermitianMatrix) -> float:
    return float(np.max(np.abs(eigenvalues(X))))


def condition_number(X: HermitianMatrix) -> float:
    w = np.abs(eigenvalues(X))
    return float(np.max(w) / np.min(w)) if np.min(w) > 0 else float("inf")


def random_unitary(p: int, rng: np.random.Generator) -> np.ndarray:
    z = (rng.standard_normal((p, p)) + 1j * rng.standard_normal((p, p))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    # Phase fix so the result is Haar distributed.
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_hermitian(p: int, rng: np.random.Generator, scale: float = 1.0) -> HermitianMatrix:
    z = rng.standard_normal((p, p)) + 1j * rng.standard_normal((p, p))
    return HermitianMatrix(scale * 0.5 * (z + z.conj().T))


def random_pd(
    p: int, rng: np.random.Generator, lo: float = 0.5, hi: float = 2.0
) -> HermitianMatrix:
    """Q diag(w) Q* with Haar Q and eigenvalues w uniform in (lo, hi)."""
    q = random_unitary(p, rng)
    w = rng.uniform(lo, hi, size=p)
    return HermitianMatrix((q * w) @ q.conj().T)


def batch_hermitian_part(stack: np.ndarray) -> np.ndarray:
    return 0.5 * (stack + np.conj(np.swapaxes(stack, -1, -2)))


def batch_eigvalsh(stack: np.ndarray) -> np.ndarray:
    return np.linalg.eigvalsh(stack)


def batch_abs_det(stack: np.ndarray) -> np.ndarray:
    return np.abs(np.prod(batch_eigvalsh(stack), axis=-1))


def batch_is_pd(stack: np.ndarray) -> np.ndarray:
    return batch_eigvalsh(stack)[..., 0] > 0

