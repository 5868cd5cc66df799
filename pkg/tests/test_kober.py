import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from mvsf.errors import DomainError, NormTooLarge, UnsupportedOrder
from mvsf.models.matrices import HermitianMatrix
from mvsf.models.params import HypSeriesSpec, IntegrandDescriptor, KoberKind, KoberRequest
from mvsf.schemas.numeric import McConfig
from mvsf.services.hermitian import abs_det, random_pd
from mvsf.services.kober import (
    evaluate_integrand,
    integrand_values,
    kober1_case1_closed,
    kober1_case2_closed,
    kober1_case3_closed,
    kober1_case4_closed,
    kober2_detpower_closed,
    kober_closed,
    kober_numeric,
)

FIRST, SECOND = KoberKind.FIRST, KoberKind.SECOND


def _req(kind, alpha, beta, f, u, p=1):
    return KoberRequest(kind, alpha, beta, f, HermitianMatrix.scalar(u, p))


# Closed forms

def test_second_kind_power_examples():
    req = _req(SECOND, 1.0, 1.0, IntegrandDescriptor.det_power_neg(1.0), 1.0)
    assert_allclose(kober2_detpower_closed(req), 0.5, rtol=1e-13)
    req = _req(SECOND, 2.0, 2.0, IntegrandDescriptor.det_power_neg(2.0), 1.0, p=2)
    assert_allclose(kober2_detpower_closed(req), 12 / 2880, rtol=1e-13)


def test_second_kind_power_at_identity_is_a_gamma_ratio():
    for alpha, beta, gamma in [(1.5, 0.5, 2.0), (3.0, 1.0, 0.25)]:
        req = _req(SECOND, alpha, beta, IntegrandDescriptor.det_power_neg(gamma), 1.0)
        expected = math.gamma(beta + gamma) / math.gamma(alpha + beta + gamma)
        assert_allclose(kober2_detpower_closed(req), expected, rtol=1e-13)


def test_case1_examples():
    req = _req(FIRST, 1.0, 0.0, IntegrandDescriptor.det_power(1.0), 1.0)
    assert_allclose(kober1_case1_closed(req), 0.5, rtol=1e-13)
    req = _req(FIRST, 2.0, 1.0, IntegrandDescriptor.det_power(1.0), 0.5, p=2)
    assert_allclose(kober1_case1_closed(req), 0.25 * 12 / 2880, rtol=1e-13)


def test_case1_without_power_ignores_the_anchor():
    values = [
        kober1_case1_closed(_req(FIRST, 2.0, 1.0, IntegrandDescriptor.det_power(0.0), u, p=2)) for u in (0.3, 1.0, 5.0)
    ]
    assert_allclose(values, values[0], rtol=1e-13)


def test_case1_is_homogeneous():
    f = IntegrandDescriptor.det_power(1.5)
    base = kober1_case1_closed(_req(FIRST, 2.5, 0.5, f, 0.4, p=2))
    scaled = kober1_case1_closed(_req(FIRST, 2.5, 0.5, f, 0.8, p=2))
    assert_allclose(scaled, 2.0 ** (2 * 1.5) * base, rtol=1e-12)


def test_case2_example():
    value, tail = kober1_case2_closed(_req(FIRST, 1.0, 0.0, IntegrandDescriptor.det_one_minus_power(1.0), 0.5), k_max=40)
    assert abs(value - (-math.log(0.5) / 0.5)) <= 1.01 * tail + 1e-10


def test_case2_without_power_is_the_prefactor():
    value, tail = kober1_case2_closed(_req(FIRST, 2.0, 1.0, IntegrandDescriptor.det_one_minus_power(0.0), 0.3, p=2))
    # (Gamma(3) Gamma(2)) / (Gamma(5) Gamma(4))
    assert_allclose(value, 2 / 144, rtol=1e-13)
    assert tail == 0.0


def test_case3_reductions():
    alpha, beta, u = 2.0, 1.0, 0.4
    at_zero_delta, _ = kober1_case3_closed(_req(FIRST, alpha, beta, IntegrandDescriptor.det_power_times_one_minus(0.7, 0.0), u, p=2))
    case1 = kober1_case1_closed(_req(FIRST, alpha, beta, IntegrandDescriptor.det_power(0.7), u, p=2))
    assert_allclose(at_zero_delta, case1, rtol=1e-13)

    at_zero_gamma, _ = kober1_case3_closed(_req(FIRST, alpha, beta, IntegrandDescriptor.det_power_times_one_minus(0.0, 0.6), u, p=2))
    case2, _ = kober1_case2_closed(_req(FIRST, alpha, beta, IntegrandDescriptor.det_one_minus_power(0.6), u, p=2))
    assert_allclose(at_zero_gamma, case2, rtol=1e-13)


def test_case4_exponential_example():
    req = _req(FIRST, 1.0, 0.0, IntegrandDescriptor.hyp_series(HypSeriesSpec()), 0.5)
    value, tail = kober1_case4_closed(req)
    assert abs(value - (math.exp(0.5) - 1) / 0.5) <= tail + 1e-13


def test_case4_binomial_matches_case2():
    a = 0.6
    series = kober1_case4_closed(_req(FIRST, 2.0, 1.0, IntegrandDescriptor.hyp_series(HypSeriesSpec((a,))), 0.4, p=2))
    case2 = kober1_case2_closed(_req(FIRST, 2.0, 1.0, IntegrandDescriptor.det_one_minus_power(a), 0.4, p=2))
    assert_allclose(series, case2, rtol=1e-12)


def test_closed_dispatch():
    req = _req(FIRST, 2.0, 1.0, IntegrandDescriptor.det_power(1.0), 0.5, p=2)
    assert kober_closed(req) == (kober1_case1_closed(req), 0.0)
    with pytest.raises(DomainError):
        kober_closed(_req(FIRST, 2.0, 1.0, IntegrandDescriptor.custom(abs_det), 0.5))
    with pytest.raises(DomainError):
        kober_closed(_req(SECOND, 2.0, 1.0, IntegrandDescriptor.det_power(1.0), 0.5))


def test_closed_form_domain_errors():
    with pytest.raises(DomainError):
        _req(FIRST, 1.0, 1.0, IntegrandDescriptor.det_power(1.0), 1.0, p=2)
    with pytest.raises(DomainError):
        kober2_detpower_closed(_req(SECOND, 2.0, 0.2, IntegrandDescriptor.det_power_neg(0.5), 1.0, p=2))
    with pytest.raises(DomainError):
        kober1_case1_closed(KoberRequest(FIRST, 2.0, 1.0, IntegrandDescriptor.det_power(1.0), HermitianMatrix.diag([1.0, 1e-7])))
    with pytest.raises(NormTooLarge):
        kober1_case2_closed(KoberRequest(FIRST, 2.0, 1.0, IntegrandDescriptor.det_one_minus_power(1.0), HermitianMatrix.diag([1.0, 0.5])))
    with pytest.raises(DomainError):
        kober1_case1_closed(_req(SECOND, 2.0, 1.0, IntegrandDescriptor.det_power(1.0), 0.5))


# Integrands

def test_integrand_values():
    V = HermitianMatrix.diag([0.5, 0.25])
    assert evaluate_integrand(IntegrandDescriptor.det_power(2.0), V) == pytest.approx(0.125**2)
    assert evaluate_integrand(IntegrandDescriptor.det_power_neg(1.0), V) == pytest.approx(8.0)
    assert evaluate_integrand(IntegrandDescriptor.det_one_minus_power(1.0), V) == pytest.approx(1 / 0.375)
    assert evaluate_integrand(IntegrandDescriptor.custom(lambda X: float(np.trace(X.entries).real)), V) == pytest.approx(0.75)
    with pytest.raises(DomainError):
        integrand_values(IntegrandDescriptor.custom(abs_det), None, np.array([[0.5, 0.25]]))


# Numeric evaluation, p = 1 (adaptive quadrature)

@pytest.mark.parametrize(
    "req",
    [
        _req(SECOND, 1.0, 1.0, IntegrandDescriptor.det_power_neg(1.0), 1.0),
        _req(SECOND, 2.5, 0.5, IntegrandDescriptor.det_power_neg(1.5), 2.0),
        _req(FIRST, 1.0, 0.0, IntegrandDescriptor.det_power(1.0), 1.0),
        _req(FIRST, 1.5, 0.5, IntegrandDescriptor.det_one_minus_power(1.0), 0.5),
        _req(FIRST, 1.0, 0.0, IntegrandDescriptor.det_power_times_one_minus(1.0, 1.0), 0.4),
        _req(FIRST, 1.0, 0.0, IntegrandDescriptor.hyp_series(HypSeriesSpec()), 0.5),
    ],
)
def test_numeric_p1_matches_closed_form(req):
    closed, tail = kober_closed(req, k_max=40)
    numeric = kober_numeric(req)
    assert numeric.std_error == 0.0
    assert abs(numeric.value - closed) <= tail + 1e-7


def test_numeric_p1_custom_integrand():
    req = _req(FIRST, 1.0, 0.0, IntegrandDescriptor.custom(abs_det), 1.0)
    assert_allclose(kober_numeric(req).value, 0.5, atol=1e-9)


# Numeric evaluation, p = 2 (Monte Carlo)

def test_numeric_p2_case1(mc_cfg):
    req = _req(FIRST, 2.0, 1.0, IntegrandDescriptor.det_power(1.0), 0.5, p=2)
    assert kober_numeric(req, mc_cfg).within(kober1_case1_closed(req), k=4.0)


def test_numeric_p2_second_kind_power(mc_cfg):
    req = _req(SECOND, 2.0, 2.0, IntegrandDescriptor.det_power_neg(2.0), 1.0, p=2)
    assert kober_numeric(req, mc_cfg).within(12 / 2880, k=4.0)


def test_numeric_p2_case2(mc_cfg):
    req = _req(FIRST, 2.0, 1.0, IntegrandDescriptor.det_one_minus_power(0.5), 0.3, p=2)
    closed, tail = kober1_case2_closed(req)
    assert kober_numeric(req, mc_cfg).within(closed, k=4.0, slack=tail)


def test_numeric_p2_custom_sees_the_same_draws():
    cfg = McConfig(samples=20_000, seed=4)
    U = HermitianMatrix(np.array([[0.6, 0.1 + 0.1j], [0.1 - 0.1j, 0.5]]))
    custom = kober_numeric(KoberRequest(FIRST, 2.0, 1.0, IntegrandDescriptor.custom(abs_det), U), cfg)
    power = kober_numeric(KoberRequest(FIRST, 2.0, 1.0, IntegrandDescriptor.det_power(1.0), U), cfg)
    assert_allclose(custom.value, power.value, rtol=1e-10)


def test_numeric_order_limit():
    req = _req(FIRST, 3.0, 1.0, IntegrandDescriptor.det_power(1.0), 0.5, p=3)
    with pytest.raises(UnsupportedOrder):
        kober_numeric(req, McConfig(samples=10_000))


def test_numeric_p2_case3(mc_cfg):
    req = _req(FIRST, 2.5, 0.5, IntegrandDescriptor.det_power_times_one_minus(1.0, 0.8), 0.4, p=2)
    closed, tail = kober1_case3_closed(req)
    assert kober_numeric(req, mc_cfg).within(closed, k=4.0, slack=tail)


def test_numeric_p2_case4_confluent_series():
    # [0.5]_K < 0 for two-row K, so the series terms change sign
    req = _req(FIRST, 2.0, 0.0, IntegrandDescriptor.hyp_series(HypSeriesSpec((0.5,), (1.5,))), 0.4, p=2)
    closed, tail = kober1_case4_closed(req)
    estimate = kober_numeric(req, McConfig(samples=200_000, seed=1))
    assert estimate.within(closed, k=4.0, slack=tail)


# Seeded sweeps over every special case

def _p1_request(case, rng):
    alpha, beta, gamma = rng.uniform(1.0, 3.0), rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0)
    if case == "power":
        return _req(SECOND, alpha, beta, IntegrandDescriptor.det_power_neg(gamma), rng.uniform(0.2, 2.0))
    if case == "case1":
        return _req(FIRST, alpha, beta, IntegrandDescriptor.det_power(gamma), rng.uniform(0.2, 2.0))
    u = rng.uniform(0.1, 0.7)
    if case == "case2":
        return _req(FIRST, alpha, beta, IntegrandDescriptor.det_one_minus_power(gamma), u)
    if case == "case3":
        return _req(FIRST, alpha, beta, IntegrandDescriptor.det_power_times_one_minus(gamma, rng.uniform(0.2, 1.5)), u)
    series = HypSeriesSpec((rng.uniform(0.2, 1.5),), (rng.uniform(1.6, 3.0),), k_max=40)
    return _req(FIRST, alpha, beta, IntegrandDescriptor.hyp_series(series), u)


def _p2_request(case, rng):
    alpha, gamma = rng.uniform(2.0, 3.5), rng.uniform(0.0, 1.0)
    if case == "power":
        U = random_pd(2, rng, lo=0.3, hi=2.0)
        return KoberRequest(SECOND, alpha, rng.uniform(2.0, 3.0), IntegrandDescriptor.det_power_neg(gamma), U)
    beta = rng.uniform(0.0, 2.0)
    if case == "case1":
        return KoberRequest(FIRST, alpha, beta, IntegrandDescriptor.det_power(gamma), random_pd(2, rng, lo=0.3, hi=2.0))
    U = random_pd(2, rng, lo=0.1, hi=0.6)
    if case == "case2":
        return KoberRequest(FIRST, alpha, beta, IntegrandDescriptor.det_one_minus_power(gamma), U)
    if case == "case3":
        f = IntegrandDescriptor.det_power_times_one_minus(gamma, rng.uniform(0.2, 1.5))
        return KoberRequest(FIRST, alpha, beta, f, U)
    series = HypSeriesSpec((rng.uniform(0.2, 1.5),), (rng.uniform(1.6, 3.0),), k_max=40)
    return KoberRequest(FIRST, alpha, beta, IntegrandDescriptor.hyp_series(series), U)


CASES = ["power", "case1", "case2", "case3", "case4"]


@pytest.mark.parametrize("case", CASES)
def test_seeded_p1_closed_vs_numeric(case):
    rng = np.random.default_rng(500 + CASES.index(case))
    for _ in range(10):
        req = _p1_request(case, rng)
        closed, tail = kober_closed(req, k_max=40)
        assert abs(kober_numeric(req).value - closed) <= tail + 1e-7


@pytest.mark.parametrize("case", CASES)
def test_seeded_p2_closed_vs_numeric(case):
    rng = np.random.default_rng(600 + CASES.index(case))
    for i in range(10):
        req = _p2_request(case, rng)
        closed, tail = kober_closed(req, k_max=40)
        estimate = kober_numeric(req, McConfig(samples=100_000, seed=30 + i))
        assert estimate.within(closed, k=5.0, slack=tail), (case, i, estimate, closed)


def test_p1_reduces_to_scalar_kober_operators():
    rng = np.random.default_rng(77)
    for _ in range(10):
        alpha, beta, gamma, u = rng.uniform(1.0, 3.0), rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0), rng.uniform(0.2, 2.0)
        # u^(-a-b) / Gamma(a) * int_0^u v^(b+g) (u - v)^(a-1) dv
        first = u**gamma * math.gamma(beta + gamma + 1) / math.gamma(alpha + beta + gamma + 1)
        req = _req(FIRST, alpha, beta, IntegrandDescriptor.det_power(gamma), u)
        assert_allclose(kober_numeric(req).value, first, rtol=1e-7, atol=1e-9)

        # u^b / Gamma(a) * int_u^inf v^(-a-b-g) (v - u)^(a-1) dv
        beta2, gamma2 = beta + 0.5, gamma + 0.5
        second = u ** (-gamma2) * math.gamma(beta2 + gamma2) / math.gamma(alpha + beta2 + gamma2)
        req = _req(SECOND, alpha, beta2, IntegrandDescriptor.det_power_neg(gamma2), u)
        assert_allclose(kober_numeric(req).value, second, rtol=1e-7, atol=1e-9)


def test_case1_ratio_to_det_power_is_constant(rng):
    alpha, beta, gamma = 2.5, 0.5, 1.3
    ratios = []
    for _ in range(5):
        U = random_pd(2, rng, lo=0.2, hi=3.0)
        req = KoberRequest(FIRST, alpha, beta, IntegrandDescriptor.det_power(gamma), U)
        ratios.append(kober1_case1_closed(req) / abs_det(U) ** gamma)
    assert_allclose(ratios, ratios[0], rtol=1e-12)


def test_case1_numeric_scales_with_the_anchor(rng):
    # same draws W for U and cU, and V = (cU)^(1/2) W (cU)^(1/2) = c V
    cfg = McConfig(samples=20_000, seed=9)
    gamma, c = 1.3, 1.7
    for _ in range(5):
        U = random_pd(2, rng, lo=0.2, hi=3.0)
        f = IntegrandDescriptor.det_power(gamma)
        base = kober_numeric(KoberRequest(FIRST, 2.5, 0.5, f, U), cfg)
        scaled = kober_numeric(KoberRequest(FIRST, 2.5, 0.5, f, HermitianMatrix(c * U.entries)), cfg)
        assert_allclose(scaled.value, c ** (2 * gamma) * base.value, rtol=1e-10)
