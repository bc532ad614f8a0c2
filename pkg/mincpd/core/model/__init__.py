from .model import (
    CpdModel,
    IndexTuple,
    ModeDistributions,
    evaluate_entry,
    leave_one_out,
    mode_gradients,
    mode_rows,
    negate_for_max,
    relaxed_objective,
)
from .storage import ModelFile, load_model, save_model

__all__ = [
    "CpdModel",
    "IndexTuple",
    "ModeDistributions",
    "ModelFile",
    "evaluate_entry",
    "leave_one_out",
    "load_model",
    "mode_gradients",
    "mode_rows",
    "negate_for_max",
    "relaxed_objective",
    "save_model",
]
