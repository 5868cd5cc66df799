"""Shared helpers for verification-row builders."""

import logging
from collections.abc import Callable
from dataclasses import dataclass, field

from mvsf.config import settings
from mvsf.schemas.numeric import McConfig, McEstimate, QuadratureSpec
from mvsf.schemas.result import ResultRow

logger = logging.getLogger(__name__)

# Certified relative error of the deterministic oracles.
QUADRATURE_RTOL = 1e-6
FD_RTOL = 1e-5
P1_KOBER_ATOL = 1e-7


@dataclass(frozen=True)
class CheckOptions:
    """Parameters of one verb; None means "use the verb's default"."""

    p: int | None = None
    alpha: float | None = None
    beta: float | None = None
    gamma: float | None = None
    delta: float | None = None
    kind: int | None = None
    case: str | None = None
    u: float | None = None
    a_params: tuple[float, ...] | None = None
    b_params: tuple[float, ...] | None = None
    kmax: int = field(default_factory=lambda: settings.K_MAX)
    seed: int = field(default_factory=lambda: settings.SEED)
    samples: int = field(default_factory=lambda: settings.SAMPLES)
    batch_size: int = field(default_factory=lambda: settings.BATCH_SIZE)
    nodes: int = field(default_factory=lambda: settings.QUAD_NODES)
    instances: int = 20

    def mc(self) -> McConfig:
        return McConfig(samples=self.samples, seed=self.seed, batch_size=self.batch_size)

    def quad(self) -> QuadratureSpec:
        return QuadratureSpec(nodes_per_axis=self.nodes)


def num(x: float) -> str:
    return format(x, ".12g")


def case_id(*parts) -> str:
    return "/".join(num(p) if isinstance(p, float) else str(p) for p in parts)


def guarded(case: str, closed_form: float, numeric: Callable[[], ResultRow]) -> ResultRow:
    """Run a numeric side; a numerical failure becomes a failing row instead of an exception."""
    try:
        return numeric()
    except ArithmeticError as e:
        logger.error(f"{case}: {e}")
        return ResultRow.failed(case, closed_form)


def quadrature_row(case: str, closed_form: float, run: Callable[[], float]) -> ResultRow:
    def numeric() -> ResultRow:
        value = run()
        return ResultRow.build(case, closed_form, value, tail_bound=QUADRATURE_RTOL * abs(value))

    return guarded(case, closed_form, numeric)


def mc_row(case: str, closed_form: float, run: Callable[[], McEstimate], tail_bound: float = 0.0) -> ResultRow:
    def numeric() -> ResultRow:
        est = run()
        return ResultRow.build(case, closed_form, est.value, std_error=est.std_error, tail_bound=tail_bound)

    return guarded(case, closed_form, numeric)
