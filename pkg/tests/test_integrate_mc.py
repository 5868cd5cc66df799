import math

import numpy as np
import pytest

from mvsf.errors import RejectionTooLow, UnsupportedOrder
from mvsf.models.params import BetaArgs
from mvsf.schemas.numeric import McConfig
from mvsf.services.integrate import BetaRepresentation, mc_beta_integral, mc_gamma_integral
from mvsf.services.multigamma import complex_matrix_beta

# Seeded runs compared at 4 standard errors.
K = 4.0


@pytest.mark.parametrize("p, alpha, expected", [(1, 2.0, 1.0), (2, 3.0, 2 * math.pi), (3, 4.0, 12 * math.pi**3)])
def test_mc_gamma(p, alpha, expected, mc_cfg):
    est = mc_gamma_integral(p, alpha, mc_cfg)
    assert est.n == mc_cfg.samples
    assert est.within(expected, k=K)


def test_mc_gamma_is_reproducible():
    cfg = McConfig(samples=20_000, seed=3, batch_size=5_000)
    first = mc_gamma_integral(2, 3.0, cfg)
    assert first == mc_gamma_integral(2, 3.0, cfg)
    other = mc_gamma_integral(2, 3.0, McConfig(samples=20_000, seed=4, batch_size=5_000))
    assert other.value != first.value
    assert abs(other.value - first.value) <= 6 * math.hypot(first.std_error, other.std_error)


def test_mc_beta_p1_is_exact():
    est = mc_beta_integral(1, 1.0, 1.0, cfg=McConfig(samples=10_000, seed=1))
    assert est.value == pytest.approx(1.0)


@pytest.mark.parametrize("representation", list(BetaRepresentation))
def test_mc_beta_p2(representation, mc_cfg):
    est = mc_beta_integral(2, 2.0, 2.0, representation, mc_cfg)
    assert est.within(math.pi / 12, k=K)


def test_mc_beta_representations_use_independent_streams(mc_cfg):
    one = mc_beta_integral(2, 2.0, 2.0, BetaRepresentation.TYPE1, mc_cfg)
    two = mc_beta_integral(2, 2.0, 2.0, BetaRepresentation.TYPE2, mc_cfg)
    assert one.value != two.value
    assert abs(one.value - two.value) <= K * math.hypot(one.std_error, two.std_error)


def test_mc_beta_p3_rejection_rate_too_low():
    with pytest.raises(RejectionTooLow):
        mc_beta_integral(3, 3.0, 3.0, cfg=McConfig(samples=10_000, seed=1))


def test_mc_order_limits():
    with pytest.raises(UnsupportedOrder):
        mc_gamma_integral(4, 5.0, McConfig(samples=10_000))
    with pytest.raises(UnsupportedOrder):
        mc_beta_integral(0, 1.0, 1.0, cfg=McConfig(samples=10_000))


@pytest.mark.slow
def test_mc_gamma_p2_million_samples():
    est = mc_gamma_integral(2, 3.0, McConfig(samples=1_000_000, seed=7))
    assert est.within(2 * math.pi, k=K)
    assert est.std_error < 1e-2 * 2 * math.pi


def _beta_pairs(p, n=10):
    rng = np.random.default_rng(1000 + p)
    return [tuple(pair) for pair in rng.uniform(p, p + 3.0, size=(n, 2)).round(3)]


@pytest.mark.parametrize("p, alpha, beta", [(p, a, b) for p in (1, 2) for a, b in _beta_pairs(p)])
def test_beta_representations_agree(p, alpha, beta):
    cfg = McConfig(samples=100_000, seed=13, batch_size=10_000)
    one = mc_beta_integral(p, alpha, beta, BetaRepresentation.TYPE1, cfg)
    two = mc_beta_integral(p, alpha, beta, BetaRepresentation.TYPE2, cfg)
    assert abs(one.value - two.value) <= K * math.hypot(one.std_error, two.std_error)
    assert one.within(complex_matrix_beta(BetaArgs(alpha, beta, p)), k=K)
