"""Complex matrix-variate gamma density and its triangular-factor sampler.

A draw is X = B^(-1/2) T T* B^(-1/2) where T is lower triangular with
t_jj^2 ~ Gamma(alpha - j + 1) and strictly-lower entries whose real and
imaginary parts are independent N(0, 1/2). Substituting X = T T* into the
density |det X|^(alpha - p) e^(-tr X) gives t_jj exponent 2(alpha - p) +
2(p - j) + 1, which is where the shapes alpha - j + 1 come from.
"""

import logging
import math
from collections.abc import Iterator

import numpy as np
from scipy import stats

from mvsf.errors import DomainError
from mvsf.models.matrices import HermitianMatrix
from mvsf.models.params import GammaArg, MatrixGammaParams
from mvsf.schemas.numeric import McConfig, McEstimate
from mvsf.services import montecarlo
from mvsf.services.hermitian import abs_det, is_positive_definite, pd_inv_sqrt
from mvsf.services.multigamma import log_complex_multigamma

logger = logging.getLogger(__name__)


def _validate(params: MatrixGammaParams) -> None:
    if not params.alpha > params.p - 1:
        raise DomainError(f"matrix-gamma shape alpha={params.alpha} must exceed p - 1 = {params.p - 1}")
    if not is_positive_definite(params.B):
        raise DomainError("matrix-gamma scale B must be positive definite")


def reference_shape(alpha: float, p: int) -> float:
    """Proposal shape alpha0 > alpha that keeps the importance weights square-integrable."""
    return alpha + min(0.5, (alpha - p + 1) / 3)


def density(params: MatrixGammaParams, X: HermitianMatrix) -> float:
    _validate(params)
    p = params.p
    if X.p != p:
        raise DomainError(f"X must be {p}x{p}, got {X.p}x{X.p}")
    if not is_positive_definite(X):
        return 0.0
    log_value = (
        params.alpha * math.log(abs_det(params.B))
        - log_complex_multigamma(GammaArg(params.alpha, p))
        + (params.alpha - p) * math.log(abs_det(X))
        - float(np.trace(params.B.entries @ X.entries).real)
    )
    return math.exp(log_value)


def log_density_batch(params: MatrixGammaParams, X: np.ndarray) -> np.ndarray:
    """Log-density for a stack of positive definite matrices, shape (n, p, p)."""
    _validate(params)
    p = params.p
    _, logdet = np.linalg.slogdet(X)
    trace = np.einsum("ij,nji->n", params.B.entries, X).real
    return (
        params.alpha * math.log(abs_det(params.B))
        - log_complex_multigamma(GammaArg(params.alpha, p))
        + (params.alpha - p) * logdet.real
        - trace
    )


def sample_factors(alpha: float, p: int, rng: np.random.Generator, n: int) -> np.ndarray:
    """n lower triangular factors T, shape (n, p, p)."""
    t = np.zeros((n, p, p), dtype=complex)
    shapes = alpha - np.arange(p)
    idx = np.arange(p)
    t[:, idx, idx] = np.sqrt(rng.standard_gamma(shapes, size=(n, p)))
    rows, cols = np.tril_indices(p, k=-1)
    if len(rows):
        m = len(rows)
        t[:, rows, cols] = (rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))) * math.sqrt(0.5)
    return t


def proposal_log_density(params: MatrixGammaParams, t: np.ndarray) -> np.ndarray:
    """Log-density at X = B^(-1/2) T T* B^(-1/2), computed from the factors T.

    Scalar gamma and normal densities of the entries of T, divided by the
    Cholesky Jacobian 2^p prod t_jj^(2(p-j)+1), times the |det B|^p of the
    congruence by B^(-1/2). No multigamma constant is involved.
    """
    p = params.p
    idx = np.arange(p)
    diag = t[:, idx, idx].real
    shapes = params.alpha - idx
    log_q = np.sum(stats.gamma.logpdf(diag**2, shapes) + math.log(2.0) + np.log(diag), axis=1)
    rows, cols = np.tril_indices(p, k=-1)
    if len(rows):
        lower = t[:, rows, cols]
        log_q += np.sum(-math.log(math.pi) - np.abs(lower) ** 2, axis=1)
    exponents = 2 * (p - (idx + 1)) + 1
    log_q -= p * math.log(2.0) + np.log(diag) @ exponents
    return log_q + p * math.log(abs_det(params.B))


def _congruence_by(params: MatrixGammaParams, w: np.ndarray) -> np.ndarray:
    if np.array_equal(params.B.entries, np.eye(params.p)):
        return w
    s = pd_inv_sqrt(params.B).entries
    return s @ w @ s


def sample_batch(params: MatrixGammaParams, rng: np.random.Generator, n: int) -> np.ndarray:
    _validate(params)
    t = sample_factors(params.alpha, params.p, rng, n)
    return _congruence_by(params, t @ np.conj(np.swapaxes(t, -1, -2)))


def sample(params: MatrixGammaParams, cfg: McConfig) -> Iterator[HermitianMatrix]:
    """cfg.samples draws; batch i uses the (seed, sampler stream, i) generator."""
    _validate(params)
    for i, size in enumerate(cfg.batch_sizes()):
        rng = montecarlo.batch_rng(cfg.seed, montecarlo.STREAM_SAMPLER, i)
        for x in sample_batch(params, rng, size):
            yield HermitianMatrix(x)


def sample_mean(params: MatrixGammaParams, cfg: McConfig) -> tuple[np.ndarray, np.ndarray]:
    """Componentwise empirical mean of cfg.samples draws and its standard error.

    The standard error is complex: its real and imaginary parts are the errors
    of the real and imaginary parts of the mean.
    """
    _validate(params)
    p = params.p
    total = np.zeros((p, p), dtype=complex)
    total_sq = np.zeros((p, p), dtype=complex)
    for i, size in enumerate(cfg.batch_sizes()):
        x = sample_batch(params, montecarlo.batch_rng(cfg.seed, montecarlo.STREAM_SAMPLER, i), size)
        total += x.sum(axis=0)
        total_sq += (x.real**2).sum(axis=0) + 1j * (x.imag**2).sum(axis=0)
    n = cfg.samples
    mean = total / n
    var_re = np.maximum(total_sq.real / n - mean.real**2, 0.0)
    var_im = np.maximum(total_sq.imag / n - mean.imag**2, 0.0)
    return mean, np.sqrt(var_re / (n - 1)) + 1j * np.sqrt(var_im / (n - 1))


def normalization_check(params: MatrixGammaParams, cfg: McConfig) -> McEstimate:
    """Importance-sampling estimate of the integral of the density over X > O."""
    _validate(params)
    p = params.p
    if p > 3:
        raise DomainError(f"normalization check supports p <= 3, got {p}")
    proposal = MatrixGammaParams(reference_shape(params.alpha, p), params.B)

    def draw(rng: np.random.Generator, n: int) -> tuple[np.ndarray, int]:
        t = sample_factors(proposal.alpha, p, rng, n)
        x = _congruence_by(proposal, t @ np.conj(np.swapaxes(t, -1, -2)))
        log_w = log_density_batch(params, x) - proposal_log_density(proposal, t)
        return np.exp(log_w), n

    return montecarlo.estimate(draw, cfg, montecarlo.STREAM_NORMALIZATION, f"normalization p={p}")
