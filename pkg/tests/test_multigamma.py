import math

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.special import beta as euler_beta

from mvsf.errors import DomainError
from mvsf.models.params import BetaArgs, GammaArg
from mvsf.services.multigamma import (
    complex_matrix_beta,
    complex_multigamma,
    complex_multigamma_ratio,
    real_matrix_beta,
    real_multigamma,
    scalar_beta,
)


def test_complex_multigamma_examples():
    assert_allclose(complex_multigamma(GammaArg(2.0, 1)), 1.0)
    assert_allclose(complex_multigamma(GammaArg(3.0, 2)), 2 * math.pi)
    # pi Gamma(4.5) Gamma(3.5)
    assert_allclose(complex_multigamma(GammaArg(4.5, 2)), math.pi * math.gamma(4.5) * math.gamma(3.5), rtol=1e-13)
    # pi^3 Gamma(4) Gamma(3) Gamma(2) = 12 pi^3
    assert_allclose(complex_multigamma(GammaArg(4.0, 3)), 12 * math.pi**3, rtol=1e-13)


def test_real_multigamma_examples():
    assert_allclose(real_multigamma(GammaArg(3.0, 1)), 2.0)
    assert_allclose(real_multigamma(GammaArg(2.0, 2)), math.pi / 2, rtol=1e-13)
    assert_allclose(real_multigamma(GammaArg(3.0, 2)), 3 * math.pi / 2, rtol=1e-13)


def test_domain_edges_are_rejected():
    with pytest.raises(DomainError):
        complex_multigamma(GammaArg(1.0, 2))
    with pytest.raises(DomainError):
        real_multigamma(GammaArg(0.5, 2))
    with pytest.raises(DomainError):
        complex_matrix_beta(BetaArgs(2.0, 0.9, 2))


def test_complex_recurrence():
    for p in (2, 3, 4):
        for alpha in (p - 0.5, p + 0.3, p + 4.0):
            ratio = complex_multigamma(GammaArg(alpha, p)) / complex_multigamma(GammaArg(alpha, p - 1))
            assert_allclose(ratio, math.pi ** (p - 1) * math.gamma(alpha - p + 1), rtol=1e-12)


def test_complex_matrix_beta_examples():
    assert_allclose(complex_matrix_beta(BetaArgs(1.0, 1.0, 1)), 1.0)
    assert_allclose(complex_matrix_beta(BetaArgs(2.0, 2.0, 2)), math.pi / 12, rtol=1e-13)
    assert_allclose(complex_matrix_beta(BetaArgs(3.0, 2.0, 2)), math.pi / 72, rtol=1e-13)


def test_real_matrix_beta_examples():
    assert_allclose(real_matrix_beta(BetaArgs(2.0, 1.0, 1)), 0.5)
    assert_allclose(real_matrix_beta(BetaArgs(1.5, 1.5, 2)), math.pi / 6, rtol=1e-13)
    # Gamma_2(2)^2 / Gamma_2(4) = (pi/2)^2 / (6 * 15 pi / 8)
    assert_allclose(real_matrix_beta(BetaArgs(2.0, 2.0, 2)), math.pi / 45, rtol=1e-13)


def test_beta_symmetry():
    for a, b, p in [(2.5, 4.0, 2), (3.2, 5.7, 3), (1.5, 0.7, 1)]:
        assert complex_matrix_beta(BetaArgs(a, b, p)) == complex_matrix_beta(BetaArgs(b, a, p))
        assert real_matrix_beta(BetaArgs(a, b, p)) == real_matrix_beta(BetaArgs(b, a, p))


def test_p1_reduces_to_euler_beta(rng):
    for a, b in rng.uniform(0.2, 10.0, size=(50, 2)):
        expected = euler_beta(a, b)
        assert_allclose(complex_matrix_beta(BetaArgs(a, b, 1)), expected, rtol=1e-12)
        assert_allclose(real_matrix_beta(BetaArgs(a, b, 1)), expected, rtol=1e-12)
        assert_allclose(scalar_beta(a, b), expected, rtol=1e-12)


def test_ratio_in_log_space():
    # Gamma~_2(4) / Gamma~_2(6) = (3! 2!) / (5! 4!)
    assert_allclose(complex_multigamma_ratio(4.0, 6.0, 2), 12 / 2880, rtol=1e-13)
    assert np.isfinite(complex_multigamma_ratio(150.0, 160.0, 3))


def test_scalar_beta_domain():
    assert_allclose(scalar_beta(2.0, 3.0), 1 / 12, rtol=1e-13)
    with pytest.raises(DomainError):
        scalar_beta(0.0, 1.0)
