import numpy as np
import pytest

from mvsf.schemas.numeric import McConfig
from mvsf.services.hermitian import random_pd


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def pd_matrices(rng):
    """Seeded positive definite Hermitian matrices of orders 1..3."""
    return [random_pd(p, rng) for p in (1, 2, 3) for _ in range(5)]


@pytest.fixture
def mc_cfg():
    return McConfig(samples=200_000, seed=7, batch_size=10_000)
