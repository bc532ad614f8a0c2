from .core import (
    CpdModel,
    DgpState,
    LatticeSpec,
    ModeDistributions,
    OracleResult,
    Solution,
    brute_force_extreme,
    direct_cost_probe,
    encode,
    evaluate_entry,
    load_instance,
    load_model,
    multistart,
    relaxed_objective,
    save_model,
    solve,
)
from .errors import MinCpdError
from .setting import ExperimentConfig, MinCpdSettings, SolverConfig

__all__ = [
    "CpdModel",
    "DgpState",
    "ExperimentConfig",
    "LatticeSpec",
    "MinCpdError",
    "MinCpdSettings",
    "ModeDistributions",
    "OracleResult",
    "Solution",
    "SolverConfig",
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
