from .channel import gen_systematic_code, simulate_awgn, simulate_bsc, trial_seed
from .experiments import (
    ExperimentRunner,
    run_experiment,
    run_parity_experiment,
    run_partition_experiment,
    run_sign_retrieval_experiment,
)
from .report import COLUMNS, ExperimentReport, TrialRecord, summarize, summary_path, write_report

__all__ = [
    "COLUMNS",
    "ExperimentReport",
    "ExperimentRunner",
    "TrialRecord",
    "gen_systematic_code",
    "run_experiment",
    "run_parity_experiment",
    "run_partition_experiment",
    "run_sign_retrieval_experiment",
    "simulate_awgn",
    "simulate_bsc",
    "summarize",
    "summary_path",
    "trial_seed",
    "write_report",
]
