"""
Gradient algorithms over the relaxed problem.

All of them minimize; ``sense=max`` runs them on the negated model and reports
values of the original one. PGD, EXP, DGP and CD update one mode at a time with a
freshly computed gradient (Gauss-Seidel order). Frank-Wolfe builds every direction
from the same iterate and then moves all modes with one common step.
"""
import functools
from dataclasses import dataclass, field, replace
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.special import softmax

from ...errors import InvalidArgumentError
from ...setting import Algorithm, Sense, SolverConfig
from ..model import (
    CpdModel,
    IndexTuple,
    ModeDistributions,
    evaluate_entry,
    mode_gradients,
    mode_rows,
    negate_for_max,
    relaxed_objective,
)
from .rounding import round_to_indices
from .simplex import discrete_gaussian, project_simplex, random_distributions, softmax_gradient

# |grad(i) - v*| <= TIE_TOL * max(1, |v*|) puts i in the Frank-Wolfe tie set
TIE_TOL = 1e-12
STATIONARY_GAP = 1e-14
LOG_FLOOR = 1e-12

Callback = Callable[[int, Sequence[np.ndarray]], None]


@dataclass(frozen=True)
class DgpState:
    mu: Tuple[float, ...]
    sigma: Tuple[float, ...]

    def __post_init__(self):
        if len(self.mu) != len(self.sigma):
            raise InvalidArgumentError("mu and sigma must have one entry per mode")
        if any(s <= 0 for s in self.sigma):
            raise InvalidArgumentError("sigma must be positive")

    @classmethod
    def from_indices(cls, indices: Sequence[float], sigma: float = 0.5) -> "DgpState":
        """Centre mode n on stored index i_n, i.e. on 1-based position i_n + 1."""
        return cls(tuple(float(i) + 1.0 for i in indices), tuple(float(sigma) for _ in indices))

    @classmethod
    def from_distributions(cls, dists: ModeDistributions, sigma: float = 0.5) -> "DgpState":
        means = [float(p @ np.arange(1, p.size + 1)) for p in dists.probs]
        return cls(tuple(means), tuple(float(sigma) for _ in means))

    def distributions(self, dims: Sequence[int]) -> ModeDistributions:
        return ModeDistributions(tuple(discrete_gaussian(m, s, size) for m, s, size in zip(self.mu, self.sigma, dims)))


@dataclass(frozen=True)
class Solution:
    best_indices: IndexTuple
    best_value: float
    final_distributions: ModeDistributions
    objective_trace: List[float]
    iterations_used: int
    converged: bool
    init_label: str = "given"
    final_state: Optional[DgpState] = None
    # Frank-Wolfe only: duality gap per direction search and the step taken after it
    gap_trace: List[float] = field(default_factory=list)
    step_trace: List[float] = field(default_factory=list)


Init = Union[ModeDistributions, DgpState, None]


def _settled(previous: float, current: float, rel_tol: float) -> bool:
    return abs(current - previous) / max(1.0, abs(previous)) < rel_tol


def _sweep(model: CpdModel, probs: List[np.ndarray], update: Callable[[int, np.ndarray], np.ndarray]) -> float:
    """
    Visit modes 0..N-1, handing each its gradient at the current iterate.

    Prefix products of already-updated modes and suffix products of the rest give the
    leave-one-out vector without divisions, so zeros need no special casing. Returns
    the objective after the pass.
    """
    rows = mode_rows(model, probs)
    suffix = np.vstack([np.cumprod(rows[::-1], axis=0)[::-1], np.ones((1, model.rank))])
    prefix = np.ones(model.rank, dtype=rows.dtype)
    for n, factor in enumerate(model.factors):
        gradient = np.real(factor @ (prefix * suffix[n + 1]))
        probs[n] = update(n, gradient)
        prefix = prefix * (probs[n] @ factor)
    return float(np.real(prefix.sum())) + model.offset


def _starting_probs(model: CpdModel, config: SolverConfig, init: Optional[ModeDistributions]) -> List[np.ndarray]:
    if init is None:
        return random_distributions(model.dims, np.random.default_rng(config.rng_seed))
    return [np.array(p) for p in init.probs]


def _finish(
    model: CpdModel,
    probs: Sequence[np.ndarray],
    trace: List[float],
    iterations: int,
    converged: bool,
    state: Optional[DgpState] = None,
    gaps: Optional[List[float]] = None,
    steps: Optional[List[float]] = None,
) -> Solution:
    dists = ModeDistributions(tuple(probs))
    indices = round_to_indices(dists)
    return Solution(
        best_indices=indices,
        best_value=evaluate_entry(model, indices),
        final_distributions=dists,
        objective_trace=trace,
        iterations_used=iterations,
        converged=converged,
        final_state=state,
        gap_trace=gaps or [],
        step_trace=steps or [],
    )


def _run(
    model: CpdModel,
    config: SolverConfig,
    probs: List[np.ndarray],
    step: Callable[[List[np.ndarray]], float],
    callback: Optional[Callback],
) -> Tuple[List[float], int, bool]:
    """Shared outer loop for the sweep-based algorithms."""
    trace = [relaxed_objective(model, probs)]
    for iteration in range(1, config.max_iters + 1):
        trace.append(step(probs))
        if callback is not None:
            callback(iteration, probs)
        if _settled(trace[-2], trace[-1], config.rel_tol):
            return trace, iteration, True
    return trace, config.max_iters, False


def _minimizer(algorithm: Algorithm):
    """Check the config/model pairing and run the wrapped minimizer in the requested sense."""

    def decorate(core):
        @functools.wraps(core)
        def solve_fn(model: CpdModel, config: SolverConfig, init: Init = None, callback: Optional[Callback] = None):
            if config.algorithm is not algorithm:
                raise InvalidArgumentError(
                    f"{core.__name__} needs algorithm={algorithm.value}, got {config.algorithm.value}"
                )
            if init is not None:
                init_order = init.order if isinstance(init, ModeDistributions) else len(init.mu)
                if init_order != model.order or (isinstance(init, ModeDistributions) and init.dims != model.dims):
                    raise InvalidArgumentError("initialization does not match the model dimensions")
            if config.sense is Sense.MIN:
                return core(model, config, init, callback)
            solution = core(negate_for_max(model), config, init, callback)
            return replace(
                solution,
                best_value=evaluate_entry(model, solution.best_indices),
                objective_trace=[-value for value in solution.objective_trace],
            )

        return solve_fn

    return decorate


@_minimizer(Algorithm.FW)
def solve_frank_wolfe(model, config, init=None, callback=None) -> Solution:
    probs = _starting_probs(model, config, init)
    trace = [relaxed_objective(model, probs)]
    iterations, converged = 0, False
    gaps, steps = [], []

    while iterations < config.max_iters:
        gap = 0.0
        directions = []
        for p, gradient in zip(probs, mode_gradients(model, probs)):
            best = gradient.min()
            ties = np.abs(gradient - best) <= TIE_TOL * max(1.0, abs(best))
            direction = ties / ties.sum()
            gap += (p - direction) @ gradient
            directions.append(direction)
        gaps.append(float(gap))

        if gap <= STATIONARY_GAP:
            converged = True
            break

        step = min(gap / config.curvature_C, 1.0)
        steps.append(float(step))
        probs = [(1.0 - step) * p + step * d for p, d in zip(probs, directions)]
        iterations += 1
        trace.append(relaxed_objective(model, probs))
        if callback is not None:
            callback(iterations, probs)
        if _settled(trace[-2], trace[-1], config.rel_tol):
            converged = True
            break

    return _finish(model, probs, trace, iterations, converged, gaps=gaps, steps=steps)


@_minimizer(Algorithm.PGD)
def solve_pgd(model, config, init=None, callback=None) -> Solution:
    probs = _starting_probs(model, config, init)
    momentum = [np.zeros(size) for size in model.dims]

    def update(n, gradient):
        momentum[n] = (1.0 - config.momentum_beta) * momentum[n] + config.momentum_beta * gradient
        return project_simplex(probs[n] - config.step_lambda * momentum[n])

    trace, iterations, converged = _run(model, config, probs, lambda ps: _sweep(model, ps, update), callback)
    return _finish(model, probs, trace, iterations, converged)


@_minimizer(Algorithm.EXP)
def solve_exponential(model, config, init=None, callback=None) -> Solution:
    if init is None:
        rng = np.random.default_rng(config.rng_seed)
        logits = [rng.standard_normal(size) for size in model.dims]
    else:
        logits = [np.log(p + LOG_FLOOR) for p in init.probs]
    probs = [softmax(v) for v in logits]

    def update(n, gradient):
        logits[n] = logits[n] - config.step_lambda * softmax_gradient(probs[n], gradient)
        return softmax(logits[n])

    trace, iterations, converged = _run(model, config, probs, lambda ps: _sweep(model, ps, update), callback)
    return _finish(model, probs, trace, iterations, converged)


def dgp_step(
    p: np.ndarray,
    gradient: np.ndarray,
    mu: float,
    sigma: float,
    step: float,
    sigma_bounds: Tuple[float, float],
) -> Tuple[float, float, np.ndarray]:
    """One discrete-Gaussian update of a single mode; returns (mu, sigma, p)."""
    dv = softmax_gradient(p, gradient)
    offsets = np.arange(1, p.size + 1) - mu
    d_mu = float(np.sum(dv * 2.0 * offsets / sigma**2))
    d_sigma = float(np.sum(dv * 2.0 * offsets**2 / sigma**3))
    mu = mu - step * d_mu
    sigma = float(np.clip(sigma - step * d_sigma, *sigma_bounds))
    return mu, sigma, discrete_gaussian(mu, sigma, p.size)


def random_dgp_state(dims: Sequence[int], sigma: float, rng: np.random.Generator) -> DgpState:
    return DgpState(tuple(float(rng.uniform(1.0, size)) for size in dims), tuple(float(sigma) for _ in dims))


@_minimizer(Algorithm.DGP)
def solve_discrete_gaussian(model, config, init=None, callback=None) -> Solution:
    bounds = config.resolved_sigma_bounds(list(model.dims))
    if init is None:
        init = random_dgp_state(model.dims, config.dgp_sigma_init, np.random.default_rng(config.rng_seed))
    mu = list(init.mu)
    sigma = [float(np.clip(s, *bounds)) for s in init.sigma]
    probs = [discrete_gaussian(m, s, size) for m, s, size in zip(mu, sigma, model.dims)]

    def update(n, gradient):
        mu[n], sigma[n], p = dgp_step(probs[n], gradient, mu[n], sigma[n], config.step_lambda, bounds)
        return p

    trace, iterations, converged = _run(model, config, probs, lambda ps: _sweep(model, ps, update), callback)
    return _finish(model, probs, trace, iterations, converged, DgpState(tuple(mu), tuple(sigma)))


@_minimizer(Algorithm.CD)
def solve_coordinate_descent(model, config, init=None, callback=None) -> Solution:
    """Discrete block-coordinate descent: move one index at a time to the best entry of its fiber."""
    start = _starting_probs(model, config, init)
    indices = list(round_to_indices(ModeDistributions(tuple(start))))
    probs = list(ModeDistributions.point_mass(model.dims, indices).probs)
    moved = [False]

    def update(n, fiber):
        best = int(np.argmin(fiber))
        if fiber[best] < fiber[indices[n]]:
            indices[n] = best
            moved[0] = True
        vertex = np.zeros(model.dims[n])
        vertex[indices[n]] = 1.0
        return vertex

    trace = [relaxed_objective(model, probs)]
    iterations, converged = 0, False
    while iterations < config.max_iters:
        moved[0] = False
        trace.append(_sweep(model, probs, update))
        iterations += 1
        if callback is not None:
            callback(iterations, probs)
        if not moved[0]:
            converged = True
            break

    return _finish(model, probs, trace, iterations, converged)


SOLVERS = {
    Algorithm.FW: solve_frank_wolfe,
    Algorithm.PGD: solve_pgd,
    Algorithm.EXP: solve_exponential,
    Algorithm.DGP: solve_discrete_gaussian,
    Algorithm.CD: solve_coordinate_descent,
}


def solve(model: CpdModel, config: SolverConfig, init: Init = None, callback: Optional[Callback] = None) -> Solution:
    """Run ``config.algorithm``, converting the initialization to the form it expects."""
    if config.algorithm is Algorithm.DGP and isinstance(init, ModeDistributions):
        init = DgpState.from_distributions(init, config.dgp_sigma_init)
    elif config.algorithm is not Algorithm.DGP and isinstance(init, DgpState):
        init = init.distributions(model.dims)
    return SOLVERS[config.algorithm](model, config, init, callback)
