import json
import os
from enum import Enum
from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator


class Algorithm(str, Enum):
    FW = "fw"
    PGD = "pgd"
    EXP = "exp"
    DGP = "dgp"
    CD = "cd"


class Sense(str, Enum):
    MIN = "min"
    MAX = "max"


class SolverConfig(BaseModel):
    algorithm: Algorithm = Field(default=Algorithm.FW, description="Relaxation algorithm")
    sense: Sense = Field(default=Sense.MIN, description="Search for the smallest or the largest entry")
    curvature_C: float = Field(default=5.0, gt=0, description="Frank-Wolfe curvature constant")
    step_lambda: float = Field(default=0.1, ge=0, description="Step size for PGD, EXP and DGP")
    momentum_beta: float = Field(default=0.9, ge=0, le=1, description="PGD momentum weight of the fresh gradient")
    max_iters: int = Field(default=1000, ge=1, description="Hard stop on iterations")
    rel_tol: float = Field(default=0.0, ge=0, description="Stop when the relative objective change drops below")
    n_random_inits: int = Field(default=5, ge=0, description="Random starting points in multistart")
    use_dp_init: bool = Field(default=False, description="Also start from the best rank-one DP solution")
    rng_seed: int = Field(default=0, ge=0, lt=2**64, description="Master seed")
    sigma_bounds: Optional[Tuple[float, float]] = Field(
        default=None, description="DGP spread clamp (sigma_min, sigma_max); None means (1e-3, 10 * max I_n)"
    )
    dgp_sigma_init: float = Field(default=0.5, gt=0, description="DGP spread of every starting point")
    workers: int = Field(default=1, ge=1, description="Threads used by multistart")

    @field_validator("sigma_bounds")
    @classmethod
    def _check_sigma_bounds(cls, value):
        if value is None:
            return value
        low, high = value
        if low <= 0:
            raise ValueError("sigma_min must be positive")
        if high < low:
            raise ValueError("sigma_max must not be smaller than sigma_min")
        return value

    def resolved_sigma_bounds(self, dims: List[int]) -> Tuple[float, float]:
        if self.sigma_bounds is not None:
            return self.sigma_bounds
        return 1e-3, 10.0 * max(dims)


class OracleSettings(BaseModel):
    enumeration_cap: int = Field(default=2**24, ge=1, description="Largest tensor the brute force will scan")
    ml_cap: int = Field(default=2**20, ge=1, description="Largest codebook the ML decoder will enumerate")
    chunk_size: int = Field(default=2**16, ge=1, description="Entries evaluated per vectorized block")
    workers: int = Field(default=1, ge=1, description="Threads scanning blocks")


class EncoderSettings(BaseModel):
    exponent_limit: float = Field(default=700.0, description="Largest exponent accepted by exponential encodings")
    ilp_target_exponent: float = Field(default=500.0, description="Default ILP t keeps exponents below this")


class HarnessSettings(BaseModel):
    progress: bool = Field(default=True, description="Show tqdm progress bars")
    record_timing: bool = Field(default=False, description="Fill the wall_ms report column")
    workers: int = Field(default=1, ge=1, description="Threads running independent trials")


class PartitionExperiment(BaseModel):
    n_items: int = Field(default=20, ge=1, description="Numbers to split")
    weight_low: int = Field(default=1, ge=1, description="Smallest integer weight")
    weight_high: int = Field(default=100, ge=1, description="Largest integer weight")
    normalize: bool = Field(default=True, description="Scale weights to sum to one")
    enumerate: bool = Field(default=True, description="Run the exact subset enumeration baseline")


class SignRetrievalExperiment(BaseModel):
    n_unknowns: int = Field(default=6, ge=1, description="Length of x")
    n_measurements: int = Field(default=12, ge=2, description="Length of y")
    noise_sigma: float = Field(default=0.5, ge=0, description="Standard deviation of the additive noise")
    sigma_sweep: List[float] = Field(default=[], description="Noise levels to sweep (overrides noise_sigma)")
    n_sweep: List[int] = Field(default=[], description="Values of N to sweep with M = 2N")
    enumerate: bool = Field(default=True, description="Run the exhaustive sign enumeration baseline")

    @model_validator(mode="after")
    def _check_shape(self):
        if not self.n_sweep and self.n_measurements <= self.n_unknowns:
            raise ValueError("sign retrieval needs more measurements than unknowns (M > N)")
        return self


class ParityExperiment(BaseModel):
    alist_path: Optional[str] = Field(default=None, description="Parity-check matrix in alist format")
    info_bits: int = Field(default=16, ge=1, description="K for the random systematic construction (N = 2K)")
    density: float = Field(default=0.2, gt=0, lt=1, description="Bernoulli density of the non-identity block")
    channel: Literal["bsc", "awgn"] = Field(default="bsc", description="Channel model")
    crossover: List[float] = Field(
        default=[10**-2.5, 10**-2.0, 10**-1.5, 10**-1.0, 10**-0.5], description="BSC crossover probabilities"
    )
    awgn_sigma: List[float] = Field(default=[0.3, 0.4, 0.5], description="AWGN noise levels")
    enumerate: bool = Field(default=True, description="Run the ML enumeration baseline")


class ExperimentConfig(BaseModel):
    kind: Literal["partition", "sign_retrieval", "parity"]
    trials: int = Field(default=100, ge=1, description="Monte-Carlo trials per setting")
    rng_seed: int = Field(default=0, ge=0, lt=2**64, description="Master seed")
    solver: SolverConfig = Field(default_factory=SolverConfig)
    partition: PartitionExperiment = Field(default_factory=PartitionExperiment)
    sign_retrieval: SignRetrievalExperiment = Field(default_factory=SignRetrievalExperiment)
    parity: ParityExperiment = Field(default_factory=ParityExperiment)

    @classmethod
    def default_for(cls, kind: str, **overrides) -> "ExperimentConfig":
        """Protocol defaults of the three desk-scale experiments."""
        solvers = {
            "partition": SolverConfig(
                algorithm=Algorithm.FW, curvature_C=5.0, max_iters=1000, n_random_inits=5, use_dp_init=False
            ),
            "sign_retrieval": SolverConfig(
                algorithm=Algorithm.DGP, step_lambda=0.1, max_iters=1000, n_random_inits=10, use_dp_init=True
            ),
            "parity": SolverConfig(
                algorithm=Algorithm.DGP, step_lambda=0.05, max_iters=2000, rel_tol=1e-9, n_random_inits=0
            ),
        }
        trials = {"partition": 100, "sign_retrieval": 100, "parity": 500}
        if kind not in trials:
            raise ValueError(f"unknown experiment kind {kind!r}")
        data = {"kind": kind, "trials": trials[kind], "solver": solvers[kind]}
        data.update(overrides)
        return cls.model_validate(data)

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        """Config document layered over ``default_for(kind)``; nested sections merge key by key."""
        document = json.loads(text)
        if not isinstance(document, dict) or "kind" not in document:
            raise ValueError("experiment config must be a JSON object with a 'kind' field")
        base = cls.default_for(document["kind"]).model_dump(mode="json")
        return cls.model_validate(_merge(base, document))


def _merge(base: dict, update: dict) -> dict:
    merged = dict(base)
    for key, value in update.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


class MinCpdSettings(BaseModel):
    solver: SolverConfig = Field(default_factory=SolverConfig)
    oracle: OracleSettings = Field(default_factory=OracleSettings)
    encoder: EncoderSettings = Field(default_factory=EncoderSettings)
    harness: HarnessSettings = Field(default_factory=HarnessSettings)

    @classmethod
    def from_env(cls) -> "MinCpdSettings":
        """Defaults overridden by ``MINCPD_*`` environment variables (a ``.env`` file is honoured by the CLI)."""
        settings = cls()
        if "MINCPD_ENUMERATION_CAP" in os.environ:
            settings.oracle.enumeration_cap = int(os.environ["MINCPD_ENUMERATION_CAP"])
        if "MINCPD_ML_CAP" in os.environ:
            settings.oracle.ml_cap = int(os.environ["MINCPD_ML_CAP"])
        if "MINCPD_WORKERS" in os.environ:
            settings.harness.workers = int(os.environ["MINCPD_WORKERS"])
            settings.oracle.workers = settings.harness.workers
        if "MINCPD_PROGRESS" in os.environ:
            settings.harness.progress = os.environ["MINCPD_PROGRESS"].lower() not in ("0", "false", "no")
        return settings
