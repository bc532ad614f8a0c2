from .encoder import LatticeSpec, encode, load_instance
from .model import CpdModel, ModeDistributions, evaluate_entry, load_model, relaxed_objective, save_model
from .oracle import OracleResult, brute_force_extreme, direct_cost_probe
from .solver import DgpState, Solution, multistart, solve

__all__ = [
    "CpdModel",
    "DgpState",
    "LatticeSpec",
    "ModeDistributions",
    "OracleResult",
    "Solution",
    "brute_force_extreme",
    "direct_cost_probe",
    "encode",
    "evaluate_entry",
    "load_instance",
    "load_model",
    "multistart",
    "relaxed_objective",
    "save_model",
    "solve",
]
