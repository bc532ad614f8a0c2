from typing import Union

import numpy as np

from ..errors import InvalidArgumentError

Seed = Union[int, np.random.Generator, np.random.SeedSequence]


def trial_seed(master: int, *keys: int) -> int:
    """Instance seed of one trial, derived from the master seed and (setting, trial) keys."""
    return int(np.random.SeedSequence([master, *keys]).generate_state(1, dtype=np.uint64)[0])


def gen_systematic_code(K: int, density: float, seed: Seed) -> np.ndarray:
    """
    Random systematic check matrix ``[P | I_K]`` of a rate-1/2 code (M = K, N = 2K).

    P is i.i.d. Bernoulli(density); rows of P that come out all zero are redrawn so every
    check involves at least one information bit.
    """
    if not 0 < density < 1:
        raise InvalidArgumentError(f"density must lie in (0, 1), got {density}")
    if K < 1:
        raise InvalidArgumentError("K must be positive")
    rng = np.random.default_rng(seed)
    P = (rng.random((K, K)) < density).astype(np.int8)
    empty = ~P.any(axis=1)
    while empty.any():
        P[empty] = (rng.random((int(empty.sum()), K)) < density).astype(np.int8)
        empty = ~P.any(axis=1)
    return np.hstack([P, np.eye(K, dtype=np.int8)])


def simulate_bsc(codeword: np.ndarray, p: float, seed: Seed) -> np.ndarray:
    """Flip every bit independently with probability p."""
    if not 0 <= p < 0.5:
        raise InvalidArgumentError(f"crossover probability must lie in [0, 0.5), got {p}")
    x = np.asarray(codeword, dtype=np.int64)
    flips = np.random.default_rng(seed).random(x.shape) < p
    return x ^ flips


def simulate_awgn(codeword: np.ndarray, sigma: float, seed: Seed) -> np.ndarray:
    """Received word ``x + n`` with n ~ N(0, sigma^2) on the {0, 1} signal set."""
    if sigma < 0:
        raise InvalidArgumentError(f"noise level must be nonnegative, got {sigma}")
    x = np.asarray(codeword, dtype=float)
    return x + sigma * np.random.default_rng(seed).standard_normal(x.shape)
