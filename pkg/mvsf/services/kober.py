"""Kober fractional integral operators of Hermitian matrix argument.

First kind:   K1 f(U) = |det U|^(-α-β) / Γ̃_p(α) ∫_{O<V<U} |det V|^β |det(U-V)|^(α-p) f(V) dV
Second kind:  K2 f(U) = |det U|^β / Γ̃_p(α) ∫_{V>U} |det V|^(-α-β) |det(V-U)|^(α-p) f(V) dV

Closed forms exist for the determinant-power and hypergeometric integrands;
kober_numeric evaluates the integrals directly for p = 1 (adaptive quadrature)
and p = 2 (Monte Carlo on the unit interval cone).
"""

import logging
import math

import numpy as np
from scipy import integrate as scipy_integrate

from mvsf.errors import DomainError, NonconvergedQuadrature, NormTooLarge, UnsupportedOrder
from mvsf.models.matrices import HermitianMatrix
from mvsf.models.params import (
    GammaArg,
    HypSeriesSpec,
    IntegrandDescriptor,
    IntegrandKind,
    KoberKind,
    KoberRequest,
)
from mvsf.schemas.numeric import McConfig, McEstimate
from mvsf.services import montecarlo
from mvsf.services.hermitian import (
    abs_det,
    batch_eigvalsh,
    batch_hermitian_part,
    condition_number,
    eigenvalues,
    is_positive_definite,
    pd_sqrt,
    spectral_norm,
)
from mvsf.services.multigamma import complex_multigamma_ratio, log_complex_multigamma
from mvsf.services.montecarlo import UnitIntervalDraw
from mvsf.services.zonal import hyp_pfq, hyp_pfq_eigs

logger = logging.getLogger(__name__)

MAX_CONDITION = 1e6
P1_ABS_TOL = 1e-9


# Validation

def _check_anchor(U: HermitianMatrix) -> None:
    if not is_positive_definite(U):
        raise DomainError("anchor matrix U must be positive definite")
    cond = condition_number(U)
    if cond >= MAX_CONDITION:
        raise DomainError(f"anchor matrix U is too ill-conditioned (condition number {cond:.3g})")


def _check_unit_interval(U: HermitianMatrix) -> None:
    if spectral_norm(U) >= 1:
        raise NormTooLarge("this special case needs O < U < I")


def _expect(req: KoberRequest, kind: KoberKind, f_kind: IntegrandKind) -> None:
    if req.kind is not kind or req.f.kind is not f_kind:
        raise DomainError(
            f"expected a {kind.value}-kind request with a {f_kind.value} integrand, "
            f"got {req.kind.value} with {req.f.kind.value}"
        )
    _check_anchor(req.U)


# Closed forms

def kober2_detpower_closed(req: KoberRequest) -> float:
    """K2 of |det V|^(-γ): |det U|^(-γ) Γ̃_p(β+γ) / Γ̃_p(α+β+γ)."""
    _expect(req, KoberKind.SECOND, IntegrandKind.DET_POWER_NEG)
    p, alpha, beta, gamma = req.p, req.alpha, req.beta, req.f.gamma
    if not beta + gamma > p - 1:
        raise DomainError(f"K2 power case needs beta + gamma > p - 1 = {p - 1}, got {beta + gamma}")
    return abs_det(req.U) ** (-gamma) * complex_multigamma_ratio(beta + gamma, alpha + beta + gamma, p)


def kober1_case1_closed(req: KoberRequest) -> float:
    """K1 of |det V|^γ: |det U|^γ Γ̃_p(β+γ+p) / Γ̃_p(α+β+γ+p)."""
    _expect(req, KoberKind.FIRST, IntegrandKind.DET_POWER)
    p, alpha, beta, gamma = req.p, req.alpha, req.beta, req.f.gamma
    if not beta + gamma > -1:
        raise DomainError(f"special case 1 needs beta + gamma > -1, got {beta + gamma}")
    return abs_det(req.U) ** gamma * complex_multigamma_ratio(beta + gamma + p, alpha + beta + gamma + p, p)


def _gauss_series(a: float, b: float, c: float, k_max: int) -> HypSeriesSpec:
    return HypSeriesSpec(a_params=(a, b), b_params=(c,), k_max=k_max)


def kober1_case2_closed(req: KoberRequest, k_max: int = 25) -> tuple[float, float]:
    """K1 of |det(I-V)|^(-γ): Γ̃_p(β+p)/Γ̃_p(α+β+p) 2F1(β+p, γ; α+β+p; U)."""
    _expect(req, KoberKind.FIRST, IntegrandKind.DET_ONE_MINUS_POWER)
    p, alpha, beta, gamma = req.p, req.alpha, req.beta, req.f.gamma
    if not beta > -1:
        raise DomainError(f"special case 2 needs beta > -1, got {beta}")
    _check_unit_interval(req.U)
    prefactor = complex_multigamma_ratio(beta + p, alpha + beta + p, p)
    series, tail = hyp_pfq(_gauss_series(beta + p, gamma, alpha + beta + p, k_max), req.U)
    return prefactor * series, prefactor * tail


def kober1_case3_closed(req: KoberRequest, k_max: int = 25) -> tuple[float, float]:
    """K1 of |det V|^γ |det(I-V)|^(-δ).

    |det U|^γ Γ̃_p(β+γ+p)/Γ̃_p(α+β+γ+p) 2F1(β+γ+p, δ; α+β+γ+p; U).
    """
    _expect(req, KoberKind.FIRST, IntegrandKind.DET_POWER_TIMES_ONE_MINUS)
    p, alpha, beta, gamma, delta = req.p, req.alpha, req.beta, req.f.gamma, req.f.delta
    if not beta + gamma > -1:
        raise DomainError(f"special case 3 needs beta + gamma > -1, got {beta + gamma}")
    _check_unit_interval(req.U)
    prefactor = abs_det(req.U) ** gamma * complex_multigamma_ratio(beta + gamma + p, alpha + beta + gamma + p, p)
    series, tail = hyp_pfq(_gauss_series(beta + gamma + p, delta, alpha + beta + gamma + p, k_max), req.U)
    return prefactor * series, prefactor * tail


def kober1_case4_closed(req: KoberRequest) -> tuple[float, float]:
    """K1 of rFs(a; b; V): Γ̃_p(β+p)/Γ̃_p(α+β+p) (r+1)F(s+1)(a, β+p; b, α+β+p; U)."""
    _expect(req, KoberKind.FIRST, IntegrandKind.HYP_SERIES)
    p, alpha, beta, spec = req.p, req.alpha, req.beta, req.f.series
    if not beta > -1:
        raise DomainError(f"special case 4 needs beta > -1, got {beta}")
    prefactor = complex_multigamma_ratio(beta + p, alpha + beta + p, p)
    lifted = HypSeriesSpec(
        a_params=spec.a_params + (beta + p,),
        b_params=spec.b_params + (alpha + beta + p,),
        k_max=spec.k_max,
    )
    series, tail = hyp_pfq(lifted, req.U)
    return prefactor * series, prefactor * tail


def kober_closed(req: KoberRequest, k_max: int = 25) -> tuple[float, float]:
    """Closed form of whichever special case the request matches; returns (value, tail_bound)."""
    f_kind = req.f.kind
    if req.kind is KoberKind.SECOND and f_kind is IntegrandKind.DET_POWER_NEG:
        return kober2_detpower_closed(req), 0.0
    if req.kind is KoberKind.FIRST:
        if f_kind is IntegrandKind.DET_POWER:
            return kober1_case1_closed(req), 0.0
        if f_kind is IntegrandKind.DET_ONE_MINUS_POWER:
            return kober1_case2_closed(req, k_max)
        if f_kind is IntegrandKind.DET_POWER_TIMES_ONE_MINUS:
            return kober1_case3_closed(req, k_max)
        if f_kind is IntegrandKind.HYP_SERIES:
            return kober1_case4_closed(req)
    raise DomainError(f"no closed form for a {req.kind.value}-kind operator applied to {f_kind.value}")


# Integrand evaluation

def integrand_values(f: IntegrandDescriptor, V: np.ndarray | None, eigs: np.ndarray) -> np.ndarray:
    """f on a stack of matrices V (n, p, p) with eigenvalues eigs (n, p).

    Only the custom kind needs the matrices themselves.
    """
    if f.kind is IntegrandKind.DET_POWER:
        return np.prod(eigs, axis=-1) ** f.gamma
    if f.kind is IntegrandKind.DET_POWER_NEG:
        return np.prod(eigs, axis=-1) ** (-f.gamma)
    if f.kind is IntegrandKind.DET_ONE_MINUS_POWER:
        return np.abs(np.prod(1 - eigs, axis=-1)) ** (-f.gamma)
    if f.kind is IntegrandKind.DET_POWER_TIMES_ONE_MINUS:
        return np.prod(eigs, axis=-1) ** f.gamma * np.abs(np.prod(1 - eigs, axis=-1)) ** (-f.delta)
    if f.kind is IntegrandKind.HYP_SERIES:
        values, _ = hyp_pfq_eigs(f.series, eigs, strict=False)
        return values
    if f.kind is IntegrandKind.CUSTOM:
        if V is None:
            raise DomainError("a custom integrand needs the matrices, not only their eigenvalues")
        return np.array([float(f.func(HermitianMatrix(v))) for v in V])
    raise DomainError(f"unknown integrand kind: {f.kind}")


def evaluate_integrand(f: IntegrandDescriptor, V: HermitianMatrix) -> float:
    return float(integrand_values(f, V.entries[None], eigenvalues(V)[None])[0])


# Numeric evaluation

def _scalar_f(f: IntegrandDescriptor):
    def value(v: float) -> float:
        return float(integrand_values(f, np.array([[[v]]], dtype=complex), np.array([[v]]))[0])

    return value


def _quad(func, lo, hi, label: str, **kwargs) -> tuple[float, int]:
    value, err, info = scipy_integrate.quad(
        func, lo, hi, epsabs=1e-13, epsrel=1e-12, limit=200, full_output=1, **kwargs
    )[:3]
    if not math.isfinite(value) or err > max(P1_ABS_TOL, 1e-10 * abs(value)):
        raise NonconvergedQuadrature(f"{label}: adaptive quadrature error estimate {err:.2e}")
    return value, int(info["neval"])


def _kober_p1(req: KoberRequest) -> McEstimate:
    alpha, beta = req.alpha, req.beta
    u = float(req.U.entries[0, 0].real)
    f = _scalar_f(req.f)
    scale = 1.0 / math.gamma(alpha)

    if req.kind is KoberKind.FIRST:
        if not beta > -1:
            raise DomainError(f"first-kind quadrature needs beta > -1, got {beta}")
        # v = u w maps O < v < u onto (0, 1); w^β (1-w)^(α-1) is the algebraic weight.
        value, neval = _quad(lambda w: f(u * w), 0.0, 1.0, "K1 p=1", weight="alg", wvar=(beta, alpha - 1))
        return McEstimate(value=scale * value, std_error=0.0, n=neval)

    # v = u (1 + t) maps v > u onto t > 0.
    head, n_head = _quad(
        lambda t: (1 + t) ** (-alpha - beta) * f(u * (1 + t)), 0.0, 1.0, "K2 p=1", weight="alg", wvar=(alpha - 1, 0.0)
    )
    tail, n_tail = _quad(lambda t: t ** (alpha - 1) * (1 + t) ** (-alpha - beta) * f(u * (1 + t)), 1.0, np.inf, "K2 p=1")
    return McEstimate(value=scale * (head + tail), std_error=0.0, n=n_head + n_tail)


def _kober_p2(req: KoberRequest, cfg: McConfig) -> McEstimate:
    p, alpha, beta = req.p, req.alpha, req.beta
    s = pd_sqrt(req.U).entries
    log_norm = log_complex_multigamma(GammaArg(alpha, p))
    needs_matrices = req.f.kind is IntegrandKind.CUSTOM

    if req.kind is KoberKind.FIRST:
        # V = U^(1/2) W U^(1/2), O < W < I.
        def integrand(d: UnitIntervalDraw) -> np.ndarray:
            v = batch_hermitian_part(s @ d.X @ s)
            f = integrand_values(req.f, v if needs_matrices else None, batch_eigvalsh(v))
            weight = np.prod(d.eigs, axis=1) ** beta * np.prod(1 - d.eigs, axis=1) ** (alpha - p)
            return np.exp(-log_norm) * weight * f

        stream = montecarlo.STREAM_KOBER_FIRST
    else:
        # V = U^(1/2) (I + T) U^(1/2) with T = X (I - X)^(-1), O < X < I.
        eye = np.eye(p)

        def integrand(d: UnitIntervalDraw) -> np.ndarray:
            v = batch_hermitian_part(s @ np.linalg.inv(eye - d.X) @ s)
            f = integrand_values(req.f, v if needs_matrices else None, batch_eigvalsh(v))
            weight = np.prod(d.eigs, axis=1) ** (alpha - p) * np.prod(1 - d.eigs, axis=1) ** (beta - p)
            return np.exp(-log_norm) * weight * f

        stream = montecarlo.STREAM_KOBER_SECOND

    label = f"K{1 if req.kind is KoberKind.FIRST else 2} p={p} {req.f.kind.value}"
    return montecarlo.unit_interval_estimate(integrand, p, cfg, stream, label)


def kober_numeric(req: KoberRequest, cfg: McConfig | None = None) -> McEstimate:
    """Direct evaluation of the operator integral (std_error is 0 for p = 1)."""
    _check_anchor(req.U)
    if req.p == 1:
        return _kober_p1(req)
    if req.p == 2:
        return _kober_p2(req, cfg or McConfig())
    raise UnsupportedOrder(f"numeric Kober operators support p in {{1, 2}}, got {req.p}")
