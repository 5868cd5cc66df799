"""Numerical evaluation of the matrix-variate gamma and beta integrals.

The p = 2 quadratures integrate in the scalar coordinates obtained by
successive substitution:

real gamma     x2 = sqrt(x1 x3) r                        (x1, x3, r)
complex gamma  x2 + i y2 = sqrt(x1 x3) r e^(i theta)     (x1, x3, r, theta)
real beta      x1 = x2^2/x3 + u, v = u / b, z-scaled x2  (x3, v, z)
complex beta   as above with z1 + i z2 = r e^(i theta)   (x3, v, r, theta)

The Monte-Carlo estimators work for p = 1, 2, 3.
"""

import enum
import logging
import math
from collections.abc import Callable

import numpy as np
from scipy import integrate as scipy_integrate

from mvsf.errors import DomainError, NonconvergedQuadrature, UnsupportedOrder
from mvsf.models.params import MatrixGammaParams
from mvsf.schemas.numeric import McConfig, McEstimate, QuadratureSpec
from mvsf.services import montecarlo, quadrature
from mvsf.services.montecarlo import UnitIntervalDraw
from mvsf.services.quadrature import Axis, radial
from mvsf.services.sampler import proposal_log_density, reference_shape, sample_factors

logger = logging.getLogger(__name__)

P1_ABS_TOL = 1e-12
MAX_MC_ORDER = 3


class BetaRepresentation(enum.Enum):
    TYPE1 = "type1"  # over O < X < I
    TYPE2 = "type2"  # over U > O


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise DomainError(message)


# p = 1

def _quad(func, lo, hi, label: str, **kwargs) -> float:
    value, err = scipy_integrate.quad(func, lo, hi, epsabs=P1_ABS_TOL, epsrel=1e-12, limit=200, **kwargs)
    if not math.isfinite(value) or err > max(1e-9, 1e-9 * abs(value)):
        raise NonconvergedQuadrature(f"{label}: adaptive quadrature error estimate {err:.2e}")
    return value


def gamma_integral_p1(alpha: float) -> float:
    """∫_0^∞ x^(α-1) e^(-x) dx."""
    _require(alpha > 0, f"scalar gamma integral needs alpha > 0, got {alpha}")
    # Split at 1 so the algebraic weight handles the endpoint singularity at 0.
    head = _quad(lambda x: np.exp(-x), 0.0, 1.0, "gamma p=1", weight="alg", wvar=(alpha - 1, 0.0))
    tail = _quad(lambda x: x ** (alpha - 1) * np.exp(-x), 1.0, np.inf, "gamma p=1")
    return head + tail


def beta_integral_p1(alpha: float, beta: float) -> float:
    """∫_0^1 x^(α-1) (1-x)^(β-1) dx."""
    _require(alpha > 0 and beta > 0, f"scalar beta integral needs positive parameters, got ({alpha}, {beta})")
    return _quad(lambda x: 1.0, 0.0, 1.0, "beta p=1", weight="alg", wvar=(alpha - 1, beta - 1))


# p = 2 quadrature

def gamma_integral_real_p2(alpha: float, q: QuadratureSpec | None = None) -> float:
    _require(alpha > 0.5, f"real p=2 gamma integral needs alpha > 1/2, got {alpha}")
    q = q or QuadratureSpec()
    R = q.radial_truncation
    quadrature.check_truncation([alpha], R, "real gamma p=2")

    def integrand(x1, x3, r):
        prod = x1 * x3
        return prod ** (alpha - 1.5) * (1 - r**2) ** (alpha - 1.5) * np.exp(-(x1 + x3)) * np.sqrt(prod)

    return quadrature.certified_integral(integrand, [radial(R), radial(R), Axis(-1.0, 1.0)], q, "real gamma p=2")


def gamma_integral_complex_p2(alpha: float, q: QuadratureSpec | None = None) -> float:
    _require(alpha > 1, f"complex p=2 gamma integral needs alpha > 1, got {alpha}")
    q = q or QuadratureSpec()
    R = q.radial_truncation
    quadrature.check_truncation([alpha], R, "complex gamma p=2")

    def integrand(x1, x3, r, theta):
        # theta enters only through the measure.
        return (x1 * x3) ** (alpha - 1) * r * (1 - r**2) ** (alpha - 2) * np.exp(-(x1 + x3))

    axes = [radial(R), radial(R), Axis(0.0, 1.0), Axis(0.0, 2 * math.pi)]
    return quadrature.certified_integral(integrand, axes, q, "complex gamma p=2")


def beta_integral_real_p2(alpha: float, beta: float, q: QuadratureSpec | None = None) -> float:
    _require(alpha > 0.5 and beta > 0.5, f"real p=2 beta integral needs alpha, beta > 1/2, got ({alpha}, {beta})")
    q = q or QuadratureSpec()

    def integrand(x3, v, z):
        b = 1 - z**2
        return (
            x3 ** (alpha - 1.5) * (1 - x3) ** (beta - 1.5)
            * v ** (alpha - 1.5) * (1 - v) ** (beta - 1.5)
            * b ** (alpha + beta - 3) * b
            * np.sqrt(x3 * (1 - x3))
        )

    axes = [Axis(0.0, 1.0), Axis(0.0, 1.0), Axis(-1.0, 1.0)]
    return quadrature.certified_integral(integrand, axes, q, "real beta p=2")


def beta_integral_complex_p2(alpha: float, beta: float, q: QuadratureSpec | None = None) -> float:
    _require(alpha > 1 and beta > 1, f"complex p=2 beta integral needs alpha, beta > 1, got ({alpha}, {beta})")
    q = q or QuadratureSpec()

    def integrand(x3, v, r, theta):
        b = 1 - r**2
        return (
            x3 ** (alpha - 2) * (1 - x3) ** (beta - 2)
            * v ** (alpha - 2) * (1 - v) ** (beta - 2)
            * b ** (alpha + beta - 4) * b
            * x3 * (1 - x3) * r
        )

    axes = [Axis(0.0, 1.0), Axis(0.0, 1.0), Axis(0.0, 1.0), Axis(0.0, 2 * math.pi)]
    return quadrature.certified_integral(integrand, axes, q, "complex beta p=2")


# Monte Carlo

def _check_mc_order(p: int) -> None:
    if p < 1 or p > MAX_MC_ORDER:
        raise UnsupportedOrder(f"Monte-Carlo integrals support p in 1..{MAX_MC_ORDER}, got {p}")


def mc_gamma_integral(p: int, alpha: float, cfg: McConfig | None = None) -> McEstimate:
    """Importance-sampling estimate of ∫_{X>O} |det X|^(α-p) e^(-tr X) dX.

    Proposal: the triangular-factor sampler at shape alpha0 = reference_shape(alpha, p).
    """
    _check_mc_order(p)
    _require(alpha > p - 1, f"complex gamma integral needs alpha > p - 1 = {p - 1}, got {alpha}")
    cfg = cfg or McConfig()
    proposal = MatrixGammaParams.standard(reference_shape(alpha, p), p)
    idx = np.arange(p)

    def draw(rng: np.random.Generator, n: int) -> tuple[np.ndarray, int]:
        t = sample_factors(proposal.alpha, p, rng, n)
        diag = t[:, idx, idx].real
        log_det = 2 * np.sum(np.log(diag), axis=1)
        trace = np.sum(np.abs(t) ** 2, axis=(1, 2))
        log_w = (alpha - p) * log_det - trace - proposal_log_density(proposal, t)
        return np.exp(log_w), n

    return montecarlo.estimate(draw, cfg, montecarlo.STREAM_GAMMA, f"mc gamma p={p} alpha={alpha}")


def _beta_type1(alpha: float, beta: float) -> Callable[[UnitIntervalDraw], np.ndarray]:
    def integrand(d: UnitIntervalDraw) -> np.ndarray:
        return np.prod(d.eigs, axis=1) ** (alpha - d.eigs.shape[1]) * np.prod(1 - d.eigs, axis=1) ** (beta - d.eigs.shape[1])

    return integrand


def _beta_type2(alpha: float, beta: float) -> Callable[[UnitIntervalDraw], np.ndarray]:
    # U = (I - X)^(-1/2) X (I - X)^(-1/2) has eigenvalues x / (1 - x) and
    # dU = |det(I - X)|^(-2p) dX.
    def integrand(d: UnitIntervalDraw) -> np.ndarray:
        p = d.eigs.shape[1]
        u = d.eigs / (1 - d.eigs)
        det_u = np.prod(u, axis=1)
        det_i_plus_u = np.prod(1 + u, axis=1)
        jac = np.prod(1 - d.eigs, axis=1) ** (-2 * p)
        return det_u ** (alpha - p) * det_i_plus_u ** (-(alpha + beta)) * jac

    return integrand


def mc_beta_integral(
    p: int,
    alpha: float,
    beta: float,
    representation: BetaRepresentation = BetaRepresentation.TYPE1,
    cfg: McConfig | None = None,
) -> McEstimate:
    """Box-rejection estimate of the complex matrix beta integral.

    TYPE1: ∫_{O<X<I} |det X|^(α-p) |det(I-X)|^(β-p) dX.
    TYPE2: ∫_{U>O} |det U|^(α-p) |det(I+U)|^(-(α+β)) dU, on an independent stream.
    """
    _check_mc_order(p)
    _require(
        alpha > p - 1 and beta > p - 1,
        f"complex beta integral needs alpha, beta > p - 1 = {p - 1}, got ({alpha}, {beta})",
    )
    cfg = cfg or McConfig()
    if representation is BetaRepresentation.TYPE1:
        integrand, stream = _beta_type1(alpha, beta), montecarlo.STREAM_BETA_TYPE1
    else:
        integrand, stream = _beta_type2(alpha, beta), montecarlo.STREAM_BETA_TYPE2
    label = f"mc beta {representation.value} p={p} alpha={alpha} beta={beta}"
    return montecarlo.unit_interval_estimate(integrand, p, cfg, stream, label)
