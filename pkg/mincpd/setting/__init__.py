from .setting import (
    Algorithm,
    EncoderSettings,
    ExperimentConfig,
    HarnessSettings,
    MinCpdSettings,
    OracleSettings,
    ParityExperiment,
    PartitionExperiment,
    Sense,
    SignRetrievalExperiment,
    SolverConfig,
)

__all__ = [
    "Algorithm",
    "EncoderSettings",
    "ExperimentConfig",
    "HarnessSettings",
    "MinCpdSettings",
    "OracleSettings",
    "ParityExperiment",
    "PartitionExperiment",
    "Sense",
    "SignRetrievalExperiment",
    "SolverConfig",
]
