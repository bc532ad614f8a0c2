from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from typing import List, Tuple

import numpy as np

from ...errors import InvalidArgumentError, UnsupportedInitError
from ...logger import log
from ...setting import Algorithm, Sense, SolverConfig
from ..model import CpdModel, ModeDistributions
from .algorithms import DgpState, Init, Solution, random_dgp_state, solve
from .dp import dp_initialization
from .simplex import random_distributions


def init_rng(config: SolverConfig, k: int) -> np.random.Generator:
    """Generator of the k-th random start; equals ``SeedSequence(rng_seed).spawn(k + 1)[k]``."""
    return np.random.default_rng(np.random.SeedSequence(config.rng_seed, spawn_key=(k,)))


def random_init(model: CpdModel, config: SolverConfig, k: int) -> Init:
    rng = init_rng(config, k)
    if config.algorithm is Algorithm.DGP:
        return random_dgp_state(model.dims, config.dgp_sigma_init, rng)
    return ModeDistributions(tuple(random_distributions(model.dims, rng)))


def starting_points(model: CpdModel, config: SolverConfig) -> List[Tuple[str, Init]]:
    if config.n_random_inits == 0 and not config.use_dp_init:
        raise InvalidArgumentError("no starting point: n_random_inits is 0 and use_dp_init is off")

    starts: List[Tuple[str, Init]] = []
    if config.use_dp_init:
        try:
            dists = dp_initialization(model, config.sense)
            if config.algorithm is Algorithm.DGP:
                indices = [int(np.argmax(p)) for p in dists.probs]
                starts.append(("dp", DgpState.from_indices(indices, config.dgp_sigma_init)))
            else:
                starts.append(("dp", dists))
        except UnsupportedInitError as exc:
            log("MULTISTART", f"{exc}; falling back to a random start")

    n_random = config.n_random_inits if starts or config.n_random_inits else 1
    starts.extend((f"random-{k}", random_init(model, config, k)) for k in range(n_random))
    return starts


def multistart(model: CpdModel, config: SolverConfig, starts: List[Tuple[str, Init]] | None = None) -> Solution:
    """
    Run the configured solver from every starting point and keep the best rounded result.

    Args:
        model: tensor to search.
        config: solver settings; ``workers > 1`` runs the starts on a thread pool.
        starts: explicit (label, init) pairs; by default the DP start (if enabled)
            followed by ``n_random_inits`` seeded random starts.

    Returns:
        The winning Solution, ``init_label`` naming its start. Ties go to the earlier start.
    """
    starts = starts if starts is not None else starting_points(model, config)
    if not starts:
        raise InvalidArgumentError("multistart needs at least one starting point")

    def run(start):
        label, init = start
        return replace(solve(model, config, init), init_label=label)

    if config.workers > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            solutions = list(pool.map(run, starts))
    else:
        solutions = [run(start) for start in starts]

    sign = 1.0 if config.sense is Sense.MIN else -1.0
    best = min(range(len(solutions)), key=lambda k: (sign * solutions[k].best_value, k))
    return solutions[best]
