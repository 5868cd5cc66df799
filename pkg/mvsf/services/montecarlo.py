"""Batch-means Monte-Carlo engine and the unit-box sampler for O < X < I.

Every batch draws from its own PCG64 stream keyed by (seed, stream, batch_index),
so an estimate depends only on (seed, samples, batch_size) and not on how the
batches were scheduled.
"""

import logging
import math
from collections.abc import Callable
from typing import NamedTuple

import numpy as np

from mvsf.errors import RejectionTooLow
from mvsf.schemas.numeric import McConfig, McEstimate
from mvsf.services.hermitian import batch_eigvalsh
from mvsf.workers.batch_pool import run_batches

logger = logging.getLogger(__name__)

MIN_ACCEPTANCE = 1e-3

# Stream tags; estimators that are compared with each other use different tags.
STREAM_GAMMA = 1
STREAM_NORMALIZATION = 2
STREAM_BETA_TYPE1 = 3
STREAM_BETA_TYPE2 = 4
STREAM_KOBER_FIRST = 5
STREAM_KOBER_SECOND = 6
STREAM_SAMPLER = 7


class BatchSums(NamedTuple):
    total: float
    total_sq: float
    n: int
    accepted: int


# draw(rng, n) -> (n weighted values, number of accepted draws)
Draw = Callable[[np.random.Generator, int], tuple[np.ndarray, int]]


def batch_rng(seed: int, stream: int, batch_index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(stream, batch_index))))


def reduce_batches(sums: list[BatchSums]) -> McEstimate:
    """Mean with a batch-means standard error floored at the i.i.d. standard error."""
    n_total = sum(b.n for b in sums)
    value = sum(b.total for b in sums) / n_total
    variance = max(sum(b.total_sq for b in sums) / n_total - value**2, 0.0)
    std_error = math.sqrt(variance / max(n_total - 1, 1))

    if len(sums) >= 2:
        k = len(sums)
        spread = sum((b.n / n_total) ** 2 * (b.total / b.n - value) ** 2 for b in sums)
        std_error = max(std_error, math.sqrt(k / (k - 1) * spread))

    return McEstimate(value=value, std_error=std_error, n=n_total)


def estimate(draw: Draw, cfg: McConfig, stream: int, label: str) -> McEstimate:
    sizes = cfg.batch_sizes()

    def one_batch(i: int) -> BatchSums:
        values, accepted = draw(batch_rng(cfg.seed, stream, i), sizes[i])
        logger.debug(f"{label}: batch {i} mean {float(np.mean(values)):.6g}")
        return BatchSums(float(np.sum(values)), float(np.sum(values**2)), sizes[i], accepted)

    sums = run_batches(one_batch, len(sizes))
    accepted = sum(b.accepted for b in sums)
    rate = accepted / cfg.samples
    if rate < MIN_ACCEPTANCE:
        raise RejectionTooLow(f"{label}: acceptance rate {rate:.2e} is below {MIN_ACCEPTANCE:.0e}")
    if rate < 1.0:
        logger.info(f"{label}: acceptance rate {rate:.4f}")

    result = reduce_batches(sums)
    logger.info(f"{label}: {result.value:.10g} +- {result.std_error:.3g} ({len(sizes)} batches)")
    return result


# Unit-box sampler

def box_volume(p: int) -> float:
    """Volume of diag in (0, 1), re/im of off-diagonal entries in (-1, 1)."""
    return 2.0 ** (p * (p - 1))


def sample_box(rng: np.random.Generator, n: int, p: int) -> np.ndarray:
    """n Hermitian matrices uniform on the box containing {O < X < I}."""
    x = np.zeros((n, p, p), dtype=complex)
    idx = np.arange(p)
    x[:, idx, idx] = rng.uniform(0.0, 1.0, size=(n, p))
    rows, cols = np.tril_indices(p, k=-1)
    if len(rows):
        m = len(rows)
        lower = rng.uniform(-1.0, 1.0, size=(n, m)) + 1j * rng.uniform(-1.0, 1.0, size=(n, m))
        x[:, rows, cols] = lower
        x[:, cols, rows] = np.conj(lower)
    return x


class UnitIntervalDraw(NamedTuple):
    X: np.ndarray  # accepted matrices, shape (k, p, p)
    eigs: np.ndarray  # their eigenvalues, shape (k, p), all in (0, 1)
    accepted: int


def draw_unit_interval(rng: np.random.Generator, n: int, p: int) -> UnitIntervalDraw:
    x = sample_box(rng, n, p)
    eigs = batch_eigvalsh(x)
    inside = (eigs[:, 0] > 0) & (eigs[:, -1] < 1)
    return UnitIntervalDraw(x[inside], eigs[inside], int(np.count_nonzero(inside)))


def unit_interval_estimate(
    integrand: Callable[[UnitIntervalDraw], np.ndarray],
    p: int,
    cfg: McConfig,
    stream: int,
    label: str,
) -> McEstimate:
    """Estimate the integral over O < X < I of ``integrand`` by box rejection sampling."""
    volume = box_volume(p)

    def draw(rng: np.random.Generator, n: int) -> tuple[np.ndarray, int]:
        d = draw_unit_interval(rng, n, p)
        values = np.zeros(n)
        values[: d.accepted] = volume * integrand(d)
        return values, d.accepted

    return estimate(draw, cfg, stream, label)
