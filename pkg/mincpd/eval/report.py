from dataclasses import asdict, dataclass
from pathlib import Path
from typing import List, Optional, Union

import pandas as pd

COLUMNS = ["setting", "trial", "method", "metric", "value", "iterations", "seed", "wall_ms"]


@dataclass(frozen=True)
class TrialRecord:
    setting: str
    trial: int
    method: str
    metric: str
    value: float
    iterations: Optional[int]
    seed: int
    wall_ms: Optional[float] = None


@dataclass
class ExperimentReport:
    trials: pd.DataFrame
    summary: pd.DataFrame


def records_to_frame(records: List[TrialRecord]) -> pd.DataFrame:
    frame = pd.DataFrame([asdict(r) for r in records], columns=COLUMNS)
    frame["iterations"] = frame["iterations"].astype("Int64")
    frame["seed"] = frame["seed"].astype("uint64")
    return frame


def summarize(frame: pd.DataFrame, divisor: float = 1.0, name: str = "mean") -> pd.DataFrame:
    """Mean metric per (setting, method, metric), divided by ``divisor`` (bits per trial for BER)."""
    grouped = frame.groupby(["setting", "method", "metric"], sort=False)["value"]
    summary = grouped.agg(["count", "mean"]).reset_index()
    summary[name] = summary.pop("mean") / divisor
    return summary.rename(columns={"count": "trials"})


def summary_path(path: Union[str, Path]) -> Path:
    path = Path(path)
    return path.with_name(f"{path.stem}.summary.csv")


def write_report(report: ExperimentReport, path: Union[str, Path]) -> None:
    """Per-trial rows to ``path``, the summary next to it as ``<stem>.summary.csv``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    report.trials.to_csv(path, index=False, columns=COLUMNS)
    report.summary.to_csv(summary_path(path), index=False)
