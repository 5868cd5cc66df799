"""Matrix value types.

Entries are stored as read-only numpy arrays; Python's ``complex`` is the
scalar type for complex entries.
"""

from dataclasses import dataclass

import numpy as np

from mvsf.errors import DomainError

_HERMITIAN_ATOL = 1e-12


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.flags.writeable = False
    return a


def _square(a: np.ndarray, name: str) -> np.ndarray:
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise DomainError(f"{name} must be a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DomainError(f"{name} has non-finite entries")
    return a


@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    """p x p complex matrix with X = X*."""

    entries: np.ndarray

    def __post_init__(self):
        a = _square(np.asarray(self.entries, dtype=complex), "HermitianMatrix")
        scale = max(1.0, float(np.max(np.abs(a))))
        if not np.allclose(a, a.conj().T, rtol=0.0, atol=_HERMITIAN_ATOL * scale):
            raise DomainError("matrix is not Hermitian")
        # Exact symmetry: the diagonal becomes real, (i, j) and (j, i) conjugate.
        a = 0.5 * (a + a.conj().T)
        object.__setattr__(self, "entries", _frozen(a))

    @property
    def p(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def identity(cls, p: int) -> "HermitianMatrix":
        return cls(np.eye(p, dtype=complex))

    @classmethod
    def diag(cls, values) -> "HermitianMatrix":
        return cls(np.diag(np.asarray(values, dtype=float)).astype(complex))

    @classmethod
    def scalar(cls, value: float, p: int) -> "HermitianMatrix":
        return cls(value * np.eye(p, dtype=complex))

    def __repr__(self) -> str:
        return f"HermitianMatrix(p={self.p}, entries={self.entries.tolist()})"


@dataclass(frozen=True, eq=False)
class LowerTriangular:
    """Lower triangular complex matrix with real positive diagonal (a Cholesky factor)."""

    entries: np.ndarray

    def __post_init__(self):
        t = _square(np.asarray(self.entries, dtype=complex), "LowerTriangular")
        if np.any(np.triu(t, k=1) != 0):
            raise DomainError("entries above the diagonal must be zero")
        d = np.diag(t)
        if np.any(d.imag != 0) or np.any(d.real <= 0):
            raise DomainError("diagonal entries must be real and positive")
        object.__setattr__(self, "entries", _frozen(t))

    @property
    def p(self) -> int:
        return self.entries.shape[0]

    @property
    def diagonal(self) -> np.ndarray:
        return np.diag(self.entries).real


@dataclass(frozen=True, eq=False)
class SymmetricMatrix:
    """Real symmetric p x p matrix (the real-case argument)."""

    entries: np.ndarray

    def __post_init__(self):
        a = _square(np.asarray(self.entries), "SymmetricMatrix")
        if np.iscomplexobj(a):
            raise DomainError("SymmetricMatrix entries must be real")
        a = a.astype(float)
        scale = max(1.0, float(np.max(np.abs(a))))
        if not np.allclose(a, a.T, rtol=0.0, atol=_HERMITIAN_ATOL * scale):
            raise DomainError("matrix is not symmetric")
        object.__setattr__(self, "entries", _frozen(0.5 * (a + a.T)))

    @property
    def p(self) -> int:
        return self.entries.shape[0]
