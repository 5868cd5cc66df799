"""Tensor Gauss-Legendre quadrature with endpoint-smoothing maps.

Each axis is integrated in a variable s in (0, 1):
    semi-infinite (0, R):  x = R s^2
    finite (a, b):         x = a + (b - a)(s - sin(2 pi s) / (2 pi))
Both maps vanish to high order at the endpoints, which absorbs the algebraic
endpoint factors x^(alpha - 1) and (1 - r^2)^(alpha - 3/2) of the integrands.
"""

import logging
import math
from collections.abc import Callable
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from scipy.special import gammaincc, roots_legendre

from mvsf.errors import NonconvergedQuadrature
from mvsf.schemas.numeric import QuadratureSpec

logger = logging.getLogger(__name__)

CERTIFICATE_RTOL = 1e-6
TAIL_TOL = 1e-12


class Axis(NamedTuple):
    lo: float
    hi: float
    semi_infinite: bool = False


def radial(R: float) -> Axis:
    return Axis(0.0, R, semi_infinite=True)


@lru_cache(maxsize=32)
def _legendre01(n: int) -> tuple[np.ndarray, np.ndarray]:
    s, w = roots_legendre(n)
    return (s + 1) / 2, w / 2


def axis_rule(axis: Axis, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of an n-point rule on one axis, map Jacobian folded into the weights."""
    s, w = _legendre01(n)
    if axis.semi_infinite:
        return axis.hi * s**2, w * 2 * axis.hi * s
    width = axis.hi - axis.lo
    x = axis.lo + width * (s - np.sin(2 * np.pi * s) / (2 * np.pi))
    return x, w * width * (1 - np.cos(2 * np.pi * s))


def tensor_integrate(integrand: Callable[..., np.ndarray], axes: list[Axis], n: int) -> float:
    """Tensor-product rule over ``axes``; the integrand broadcasts over its arguments.

    The grid is evaluated one node of the first axis at a time.
    """
    rules = [axis_rule(a, n) for a in axes]
    head_x, head_w = rules[0]
    rest = rules[1:]
    rest_x = np.meshgrid(*(x for x, _ in rest), indexing="ij", sparse=True)
    rest_w = np.ones(())
    for _, w in rest:
        rest_w = np.multiply.outer(rest_w, w)

    total = 0.0
    for x0, w0 in zip(head_x, head_w):
        values = integrand(x0, *rest_x)
        total += w0 * float(np.sum(np.broadcast_to(values, rest_w.shape) * rest_w))
    return total


def tail_bound(a: float, R: float) -> float:
    """Relative mass of x^(a-1) e^(-x) beyond R, i.e. the regularised Q(a, R)."""
    return float(gammaincc(a, R))


def check_truncation(shapes: list[float], R: float, label: str) -> float:
    worst = max(tail_bound(a, R) for a in shapes)
    if worst >= TAIL_TOL:
        raise NonconvergedQuadrature(
            f"{label}: truncation at R={R} leaves relative tail {worst:.2e}; increase radial_truncation"
        )
    return worst


def certified_integral(
    integrand: Callable[..., np.ndarray], axes: list[Axis], spec: QuadratureSpec, label: str
) -> float:
    """Integrate at nodes_per_axis and at half of it; raise if they disagree beyond 1e-6."""
    n = spec.nodes_per_axis
    fine = tensor_integrate(integrand, axes, n)
    coarse = tensor_integrate(integrand, axes, n // 2)
    scale = abs(fine) if fine != 0 else 1.0
    change = abs(fine - coarse) / scale
    logger.info(f"{label}: {n} nodes/axis -> {fine:.12g}, certificate {change:.2e}")
    if not math.isfinite(fine) or change > CERTIFICATE_RTOL:
        raise NonconvergedQuadrature(
            f"{label}: doubling nodes from {n // 2} to {n} changed the result by {change:.2e}"
        )
    return fine
