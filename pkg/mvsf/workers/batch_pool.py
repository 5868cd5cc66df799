"""Bounded worker pool for independent Monte-Carlo batches.

Concurrency is capped by MVSF_THREADS; results come back in batch-index order
so every reduction over them is order-fixed.
"""

import logging
import os
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

from mvsf.config import settings

logger = logging.getLogger(__name__)

T = TypeVar("T")

DEFAULT_MAX_WORKERS = 4


def worker_count() -> int:
    if settings.THREADS is not None:
        return max(1, settings.THREADS)
    return min(DEFAULT_MAX_WORKERS, os.cpu_count() or 1)


def run_batches(fn: Callable[[int], T], n_batches: int) -> list[T]:
    """Run fn(0), ..., fn(n_batches - 1); the i-th result is fn(i)."""
    workers = min(worker_count(), n_batches)
    if workers <= 1:
        return [fn(i) for i in range(n_batches)]

    logger.debug(f"Running {n_batches} batches on {workers} threads")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, range(n_batches)))
