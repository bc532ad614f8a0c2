import numpy as np
import pytest

from mincpd.core.model import CpdModel
from mincpd.setting import MinCpdSettings, OracleSettings


def random_model(rng: np.random.Generator, dims, rank: int, zeros: float = 0.0, offset: float = 0.0) -> CpdModel:
    """Gaussian factors; ``zeros`` is the fraction of entries forced to exactly 0."""
    factors = []
    for size in dims:
        factor = rng.standard_normal((size, rank))
        if zeros:
            factor[rng.random(factor.shape) < zeros] = 0.0
        factors.append(factor)
    return CpdModel(tuple(factors), offset=offset)


@pytest.fixture
def rng():
    return np.random.default_rng(20240521)


@pytest.fixture
def toy_check_matrix():
    # codewords are 000 and 111
    return np.array([[1, 1, 0], [0, 1, 1]])


@pytest.fixture
def quiet_settings():
    settings = MinCpdSettings()
    settings.harness.progress = False
    return settings


@pytest.fixture
def small_oracle():
    return OracleSettings(chunk_size=7)
