"""Parameter bundles for the integrals, series and operators."""

import enum
from collections.abc import Callable
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from mvsf.errors import DomainError
from mvsf.models.matrices import HermitianMatrix


class GammaArg(NamedTuple):
    alpha: float
    p: int


class BetaArgs(NamedTuple):
    alpha: float
    beta: float
    p: int


@dataclass(frozen=True, eq=False)
class MatrixGammaParams:
    """Shape alpha and PD scale-inverse B of the complex matrix-gamma density."""

    alpha: float
    B: HermitianMatrix

    @property
    def p(self) -> int:
        return self.B.p

    @classmethod
    def standard(cls, alpha: float, p: int) -> "MatrixGammaParams":
        return cls(alpha, HermitianMatrix.identity(p))


@dataclass(frozen=True)
class HypSeriesSpec:
    """Parameters of rFs(a_1..a_r; b_1..b_s; X), truncated at degree k_max."""

    a_params: tuple[float, ...] = ()
    b_params: tuple[float, ...] = ()
    k_max: int = 25

    def __post_init__(self):
        object.__setattr__(self, "a_params", tuple(float(a) for a in self.a_params))
        object.__setattr__(self, "b_params", tuple(float(b) for b in self.b_params))
        if self.k_max < 10:
            raise DomainError(f"k_max must be at least 10, got {self.k_max}")
        if self.r > self.s + 1:
            raise DomainError(f"{self.r}F{self.s} diverges: need s >= r or r = s + 1")

    @property
    def r(self) -> int:
        return len(self.a_params)

    @property
    def s(self) -> int:
        return len(self.b_params)

    @property
    def bounded(self) -> bool:
        """True when the series needs a spectral norm below one (r = s + 1)."""
        return self.r == self.s + 1

    def label(self) -> str:
        return f"{self.r}F{self.s}"


class IntegrandKind(enum.Enum):
    DET_POWER = "det_power"  # |det V|^gamma
    DET_POWER_NEG = "det_power_neg"  # |det V|^-gamma
    DET_ONE_MINUS_POWER = "det_one_minus_power"  # |det(I - V)|^-gamma
    DET_POWER_TIMES_ONE_MINUS = "det_power_times_one_minus"  # |det V|^gamma |det(I - V)|^-delta
    HYP_SERIES = "hyp_series"
    CUSTOM = "custom"


@dataclass(frozen=True, eq=False)
class IntegrandDescriptor:
    kind: IntegrandKind
    gamma: float = 0.0
    delta: float = 0.0
    series: HypSeriesSpec | None = None
    func: Callable[[HermitianMatrix], float] | None = None

    def __post_init__(self):
        if self.kind is IntegrandKind.HYP_SERIES and self.series is None:
            raise DomainError("a hypergeometric integrand needs a HypSeriesSpec")
        if self.kind is IntegrandKind.CUSTOM and self.func is None:
            raise DomainError("a custom integrand needs a callable")

    @classmethod
    def det_power(cls, gamma: float) -> "IntegrandDescriptor":
        return cls(IntegrandKind.DET_POWER, gamma=gamma)

    @classmethod
    def det_power_neg(cls, gamma: float) -> "IntegrandDescriptor":
        return cls(IntegrandKind.DET_POWER_NEG, gamma=gamma)

    @classmethod
    def det_one_minus_power(cls, gamma: float) -> "IntegrandDescriptor":
        return cls(IntegrandKind.DET_ONE_MINUS_POWER, gamma=gamma)

    @classmethod
    def det_power_times_one_minus(cls, gamma: float, delta: float) -> "IntegrandDescriptor":
        return cls(IntegrandKind.DET_POWER_TIMES_ONE_MINUS, gamma=gamma, delta=delta)

    @classmethod
    def hyp_series(cls, series: HypSeriesSpec) -> "IntegrandDescriptor":
        return cls(IntegrandKind.HYP_SERIES, series=series)

    @classmethod
    def custom(cls, func: Callable[[HermitianMatrix], float]) -> "IntegrandDescriptor":
        return cls(IntegrandKind.CUSTOM, func=func)


class KoberKind(enum.Enum):
    FIRST = "first"  # integrates over O < V < U
    SECOND = "second"  # integrates over V > U


@dataclass(frozen=True, eq=False)
class KoberRequest:
    kind: KoberKind
    alpha: float
    beta: float
    f: IntegrandDescriptor
    U: HermitianMatrix

    def __post_init__(self):
        if not self.alpha > self.p - 1:
            raise DomainError(f"Kober order alpha={self.alpha} must exceed p - 1 = {self.p - 1}")

    @property
    def p(self) -> int:
        return self.U.p


class TransformKind(enum.Enum):
    LINEAR_SANDWICH = "linear_sandwich"  # Y = A X B + C
    HERMITIAN_CONGRUENCE = "hermitian_congruence"  # Y = A X A*
    CHOLESKY_FACTOR = "cholesky_factor"  # X = T T*
    INVERSE = "inverse"  # Y = X^-1


@dataclass(frozen=True, eq=False)
class MatrixTransform:
    kind: TransformKind
    A: np.ndarray | None = None
    B: np.ndarray | None = None
    C: np.ndarray | None = None
