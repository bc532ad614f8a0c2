"""
Monte-Carlo experiments: number partitioning, sign retrieval and parity-check decoding.

Every trial draws its instance from ``trial_seed(rng_seed, setting, trial)`` and the
solver runs with that seed too, so results do not depend on thread scheduling. Rows
are collected in (setting, trial) order.
"""
import time
from concurrent.futures import ThreadPoolExecutor
from functools import partial
from typing import Callable, List, Optional, Tuple

import numpy as np
from tqdm import tqdm

from ..core.encoder import (
    ParityInstance,
    SignRetrievalInstance,
    encode_parity,
    encode_partition,
    encode_sign_retrieval,
    read_alist,
    recover_sign_retrieval_x,
)
from ..core.oracle import (
    brute_force_extreme,
    enumerate_partition,
    greedy_partition,
    ml_decode_enumerate,
    systematic_generator,
)
from ..core.solver import DgpState, multistart, starting_points
from ..errors import CapExceededError, InvalidArgumentError
from ..logger import log
from ..setting import Algorithm, ExperimentConfig, MinCpdSettings, SolverConfig
from .channel import gen_systematic_code, simulate_awgn, simulate_bsc, trial_seed
from .report import ExperimentReport, TrialRecord, records_to_frame, summarize


class _Stopwatch:
    def __init__(self, enabled: bool):
        self._enabled = enabled
        self._start = 0.0

    def __enter__(self):
        self._start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = (time.perf_counter() - self._start) * 1e3 if self._enabled else None


class ExperimentRunner:
    def __init__(self, config: ExperimentConfig, settings: Optional[MinCpdSettings] = None) -> None:
        self._config = config
        self._setting = settings or MinCpdSettings()
        self._runners = {
            "partition": self._run_partition,
            "sign_retrieval": self._run_sign_retrieval,
            "parity": self._run_parity,
        }

    def run(self) -> ExperimentReport:
        log("EXPERIMENT", f"{self._config.kind}: {self._config.trials} trials, seed {self._config.rng_seed}")
        return self._runners[self._config.kind]()

    # -- shared plumbing -------------------------------------------------

    def _solver_config(self, seed: int) -> SolverConfig:
        return self._config.solver.model_copy(update={"rng_seed": seed})

    def _map_trials(self, label: str, trial: Callable[[int], List[TrialRecord]]) -> List[TrialRecord]:
        harness = self._setting.harness
        trials = range(self._config.trials)
        progress = dict(total=len(trials), desc=label, disable=not harness.progress, leave=False)
        if harness.workers > 1:
            with ThreadPoolExecutor(max_workers=harness.workers) as pool:
                results = list(tqdm(pool.map(trial, trials), **progress))
        else:
            results = [trial(t) for t in tqdm(trials, **progress)]
        return [record for rows in results for record in rows]

    def _timer(self) -> _Stopwatch:
        return _Stopwatch(self._setting.harness.record_timing)

    # -- partition -------------------------------------------------------

    def _run_partition(self) -> ExperimentReport:
        cfg = self._config.partition
        cap = self._setting.oracle.enumeration_cap
        enumerate_ok = cfg.enumerate and 2**cfg.n_items <= cap
        if cfg.enumerate and not enumerate_ok:
            log("EXPERIMENT", f"2^{cfg.n_items} subsets exceed the enumeration cap {cap}; skipping enumeration")
        setting = f"N={cfg.n_items}"

        def trial(t: int) -> List[TrialRecord]:
            seed = trial_seed(self._config.rng_seed, 0, t)
            rng = np.random.default_rng(seed)
            weights = rng.integers(cfg.weight_low, cfg.weight_high, size=cfg.n_items, endpoint=True).astype(float)
            if cfg.normalize:
                weights /= weights.sum()
            total = weights.sum()
            solver = self._solver_config(seed)
            row = partial(TrialRecord, setting, t, seed=seed)

            rows = []
            with self._timer() as clock:
                solution = multistart(encode_partition(weights), solver)
            gap = abs(total - 2.0 * weights @ np.asarray(solution.best_indices))
            rows.append(row(solver.algorithm.value, "gap", gap, solution.iterations_used, wall_ms=clock.elapsed))

            with self._timer() as clock:
                greedy_gap, _ = greedy_partition(weights)
            rows.append(row("greedy", "gap", greedy_gap, None, wall_ms=clock.elapsed))

            if enumerate_ok:
                with self._timer() as clock:
                    best_gap, _ = enumerate_partition(weights, self._setting.oracle)
                rows.append(row("enumeration", "gap", best_gap, None, wall_ms=clock.elapsed))
            return rows

        frame = records_to_frame(self._map_trials("partition", trial))
        # trials ordered by increasing optimal gap, or by the solver's gap without enumeration
        reference = "enumeration" if enumerate_ok else self._config.solver.algorithm.value
        order = frame[frame["method"] == reference].sort_values("value", kind="stable")["trial"].tolist()
        rank = {trial: k for k, trial in enumerate(order)}
        frame = frame.assign(_rank=frame["trial"].map(rank))
        frame = frame.sort_values("_rank", kind="stable").drop(columns="_rank").reset_index(drop=True)
        return ExperimentReport(frame, summarize(frame))

    # -- sign retrieval --------------------------------------------------

    def _sign_retrieval_settings(self) -> List[Tuple[int, int, float]]:
        cfg = self._config.sign_retrieval
        sigmas = cfg.sigma_sweep or [cfg.noise_sigma]
        if cfg.n_sweep:
            return [(n, 2 * n, sigma) for n in cfg.n_sweep for sigma in sigmas]
        return [(cfg.n_unknowns, cfg.n_measurements, sigma) for sigma in sigmas]

    def _run_sign_retrieval(self) -> ExperimentReport:
        cfg = self._config.sign_retrieval
        oracle = self._setting.oracle
        records = []
        for k, (N, M, sigma) in enumerate(self._sign_retrieval_settings()):
            if cfg.enumerate and 2**M > oracle.enumeration_cap:
                raise CapExceededError(f"2^{M} sign patterns exceed the enumeration cap {oracle.enumeration_cap}")
            setting = f"N={N},M={M},sigma={sigma:g}"

            def trial(t: int, k=k, N=N, M=M, sigma=sigma, setting=setting) -> List[TrialRecord]:
                seed = trial_seed(self._config.rng_seed, k, t)
                rng = np.random.default_rng(seed)
                x = rng.standard_normal(N)
                A = rng.standard_normal((M, N))
                y = np.abs(A @ x + sigma * rng.standard_normal(M))
                inst = SignRetrievalInstance(A, y)
                model = encode_sign_retrieval(inst)
                solver = self._solver_config(seed)
                row = partial(TrialRecord, setting, t, seed=seed)

                def error(indices) -> float:
                    estimate = recover_sign_retrieval_x(inst, indices)
                    # s and -s fit equally well; report the better of the two
                    return float(min(np.sum((estimate - x) ** 2), np.sum((estimate + x) ** 2)))

                rows = []
                with self._timer() as clock:
                    solution = multistart(model, solver)
                method = solver.algorithm.value
                iterations = solution.iterations_used
                rows.append(row(method, "cost", solution.best_value, iterations, wall_ms=clock.elapsed))
                solver_error = error(solution.best_indices)
                rows.append(row(method, "sq_error_flip_min", solver_error, iterations, wall_ms=clock.elapsed))
                if cfg.enumerate:
                    with self._timer() as clock:
                        best = brute_force_extreme(model, settings=oracle)
                    rows.append(row("enumeration", "cost", best.value, None, wall_ms=clock.elapsed))
                    best_error = error(best.indices)
                    rows.append(row("enumeration", "sq_error_flip_min", best_error, None, wall_ms=clock.elapsed))
                return rows

            records += self._map_trials(setting, trial)

        frame = records_to_frame(records)
        return ExperimentReport(frame, summarize(frame))

    # -- parity ----------------------------------------------------------

    def _check_matrix(self) -> np.ndarray:
        cfg = self._config.parity
        if cfg.alist_path:
            return read_alist(cfg.alist_path)
        return gen_systematic_code(cfg.info_bits, cfg.density, self._config.rng_seed)

    def _parity_starts(self, model, solver: SolverConfig, received: np.ndarray):
        starts = [("received", DgpState.from_indices(received, solver.dgp_sigma_init))]
        if solver.n_random_inits or solver.use_dp_init:
            starts += starting_points(model, solver)
        return starts

    def _run_parity(self) -> ExperimentReport:
        cfg = self._config.parity
        oracle = self._setting.oracle
        if self._config.solver.algorithm is not Algorithm.DGP:
            raise InvalidArgumentError("the parity experiment decodes with the discrete Gaussian algorithm (dgp)")

        C = self._check_matrix()
        G, info = systematic_generator(C)
        K = G.shape[0]
        if cfg.enumerate and 2**K > oracle.ml_cap:
            raise CapExceededError(f"codebook has 2^{K} words, ML cap is {oracle.ml_cap}")
        log("EXPERIMENT", f"code N={C.shape[1]}, M={C.shape[0]}, K={K}, channel {cfg.channel}")

        levels = cfg.crossover if cfg.channel == "bsc" else cfg.awgn_sigma
        records = []
        for k, level in enumerate(levels):
            setting = f"p={level:.4g}" if cfg.channel == "bsc" else f"sigma={level:g}"

            def trial(t: int, k=k, level=level, setting=setting) -> List[TrialRecord]:
                seed = trial_seed(self._config.rng_seed, k, t)
                rng = np.random.default_rng(seed)
                bits = rng.integers(0, 2, size=K)
                codeword = (bits @ G) % 2
                if cfg.channel == "bsc":
                    received = simulate_bsc(codeword, level, rng)
                else:
                    received = simulate_awgn(codeword, level, rng)
                inst = ParityInstance(C, received, cfg.channel)
                model = encode_parity(inst)
                solver = self._solver_config(seed)
                row = partial(TrialRecord, setting, t, seed=seed)

                rows = []
                with self._timer() as clock:
                    solution = multistart(model, solver, self._parity_starts(model, solver, received))
                decoded = np.asarray(solution.best_indices)
                errors = int(np.sum(decoded[info] != bits))
                rows.append(row("dgp", "bit_errors", errors, solution.iterations_used, wall_ms=clock.elapsed))
                if cfg.enumerate:
                    with self._timer() as clock:
                        word, _ = ml_decode_enumerate(inst, G, oracle)
                    errors = int(np.sum(word[info] != bits))
                    rows.append(row("ml", "bit_errors", errors, None, wall_ms=clock.elapsed))
                return rows

            records += self._map_trials(setting, trial)

        frame = records_to_frame(records)
        return ExperimentReport(frame, summarize(frame, divisor=K, name="ber"))


def run_experiment(config: ExperimentConfig, settings: Optional[MinCpdSettings] = None) -> ExperimentReport:
    return ExperimentRunner(config, settings).run()


def _expect(config: ExperimentConfig, kind: str) -> None:
    if config.kind != kind:
        raise InvalidArgumentError(f"expected a {kind} experiment, got {config.kind}")


def run_partition_experiment(config: ExperimentConfig, settings: Optional[MinCpdSettings] = None) -> ExperimentReport:
    _expect(config, "partition")
    return run_experiment(config, settings)


def run_sign_retrieval_experiment(
    config: ExperimentConfig, settings: Optional[MinCpdSettings] = None
) -> ExperimentReport:
    _expect(config, "sign_retrieval")
    return run_experiment(config, settings)


def run_parity_experiment(config: ExperimentConfig, settings: Optional[MinCpdSettings] = None) -> ExperimentReport:
    _expect(config, "parity")
    return run_experiment(config, settings)
