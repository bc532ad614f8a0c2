from .algorithms import (
    DgpState,
    Solution,
    dgp_step,
    solve,
    solve_coordinate_descent,
    solve_discrete_gaussian,
    solve_exponential,
    solve_frank_wolfe,
    solve_pgd,
)
from .dp import dp_initialization, dp_rank_one_extreme
from .multistart import multistart, random_init, starting_points
from .rounding import conditional_round, round_sequentially, round_to_indices
from .simplex import discrete_gaussian, project_simplex, random_distributions, softmax_gradient

__all__ = [
    "DgpState",
    "Solution",
    "conditional_round",
    "dgp_step",
    "discrete_gaussian",
    "dp_initialization",
    "dp_rank_one_extreme",
    "multistart",
    "project_simplex",
    "random_distributions",
    "random_init",
    "round_sequentially",
    "round_to_indices",
    "softmax_gradient",
    "solve",
    "solve_coordinate_descent",
    "solve_discrete_gaussian",
    "solve_exponential",
    "solve_frank_wolfe",
    "solve_pgd",
    "starting_points",
]
