import argparse
import sys
from pathlib import Path
from typing import List, Optional

import numpy as np
from dotenv import load_dotenv
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from .core.encoder import encode, encode_multiway_partition, encode_partition, load_instance
from .core.model import CpdModel, load_model, save_model
from .core.model.storage import ModelFile
from .core.oracle import brute_force_extreme
from .core.solver import Solution, dp_rank_one_extreme, multistart
from .errors import InvalidArgumentError, MinCpdError, UsageError
from .eval import run_experiment, summary_path, write_report
from .logger import Logger, log
from .setting import Algorithm, ExperimentConfig, MinCpdSettings, Sense, SolverConfig

load_dotenv()


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of printing usage and exiting with 2."""

    def error(self, message):
        raise UsageError(message)


def _floats(text: str) -> List[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _add_solver_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--alg", choices=[a.value for a in Algorithm], default=Algorithm.FW.value)
    parser.add_argument("--sense", choices=[s.value for s in Sense], default=Sense.MIN.value)
    parser.add_argument("--C", dest="curvature_C", type=float, default=5.0, help="Frank-Wolfe curvature constant")
    parser.add_argument("--lambda", dest="step_lambda", type=float, default=0.1, help="Step size")
    parser.add_argument("--beta", dest="momentum_beta", type=float, default=0.9, help="PGD momentum")
    parser.add_argument("--max-iters", type=int, default=1000)
    parser.add_argument("--rel-tol", type=float, default=0.0)
    parser.add_argument("--inits", dest="n_random_inits", type=int, default=5, help="Random starting points")
    parser.add_argument("--dp-init", action="store_true", help="Also start from the DP initialization")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--sigma-bounds", nargs=2, type=float, metavar=("MIN", "MAX"))
    parser.add_argument("--sigma-init", type=float, default=0.5, help="DGP starting spread")
    parser.add_argument("--workers", type=int, default=1)


def _solver_config(args) -> SolverConfig:
    return SolverConfig(
        algorithm=args.alg,
        sense=args.sense,
        curvature_C=args.curvature_C,
        step_lambda=args.step_lambda,
        momentum_beta=args.momentum_beta,
        max_iters=args.max_iters,
        rel_tol=args.rel_tol,
        n_random_inits=args.n_random_inits,
        use_dp_init=args.dp_init,
        rng_seed=args.seed,
        sigma_bounds=tuple(args.sigma_bounds) if args.sigma_bounds else None,
        dgp_sigma_init=args.sigma_init,
        workers=args.workers,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mincpd", description="Extreme entries of tensors in CPD form")
    parser.add_argument("--log-file", help="Also write diagnostics to this file")
    parser.add_argument("--quiet", action="store_true", help="No progress bars")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    solve = commands.add_parser("solve", help="Run a relaxation algorithm on a model file")
    solve.add_argument("model")
    _add_solver_flags(solve)
    solve.add_argument("--trace", action="store_true", help="Include the objective trace")

    encode_cmd = commands.add_parser("encode", help="Build a model file from a problem")
    problems = encode_cmd.add_subparsers(dest="problem", required=True, parser_class=_Parser)
    partition = problems.add_parser("partition")
    partition.add_argument("--weights", type=_floats, required=True)
    multiway = problems.add_parser("multiway")
    multiway.add_argument("--weights", type=_floats, required=True)
    multiway.add_argument("--groups", type=int, default=2)
    instance = problems.add_parser("instance")
    instance.add_argument("file", help="JSON instance file with a 'problem' field")
    for sub in (partition, multiway, instance):
        sub.add_argument("--out", help="Model file to write (stdout when omitted)")

    oracle = commands.add_parser("oracle", help="Exact extreme entry by enumeration")
    oracle.add_argument("model")
    oracle.add_argument("--sense", choices=[s.value for s in Sense], default=Sense.MIN.value)
    oracle.add_argument("--cap", type=int, help="Largest number of entries to scan")

    experiment = commands.add_parser("experiment", help="Run a Monte-Carlo experiment and write CSV")
    experiment.add_argument("config", nargs="?", help="JSON ExperimentConfig (defaults per --kind otherwise)")
    experiment.add_argument("--kind", choices=["partition", "sign_retrieval", "parity"])
    experiment.add_argument("--seed", type=int, required=True)
    experiment.add_argument("--out", required=True, help="CSV report path")
    experiment.add_argument("--trials", type=int)
    experiment.add_argument("--workers", type=int)
    experiment.add_argument("--timing", action="store_true", help="Fill the wall_ms column")

    dp = commands.add_parser("dp", help="Exact extreme of a rank-one model")
    dp.add_argument("model", nargs="?")
    dp.add_argument("--vector", action="append", type=_floats, help="One mode vector, e.g. --vector=-2,3")
    dp.add_argument("--sense", choices=[s.value for s in Sense], default=Sense.MIN.value)
    return parser


def _solution_document(solution: Solution, algorithm: str, trace: bool) -> dict:
    document = {
        "algorithm": algorithm,
        "indices": list(solution.best_indices),
        "value": solution.best_value,
        "iterations": solution.iterations_used,
        "converged": solution.converged,
        "init": solution.init_label,
    }
    if trace:
        document["objective_trace"] = solution.objective_trace
    return document


def _write_model(model: CpdModel, out: Optional[str], console: Console) -> None:
    if out:
        save_model(model, out)
        log("ENCODE", f"wrote {model!r} to {out}")
    else:
        console.print_json(ModelFile.from_model(model).model_dump_json())


def _run_solve(args, settings: MinCpdSettings, console: Console) -> None:
    model = load_model(args.model)
    config = _solver_config(args)
    solution = multistart(model, config)
    console.print_json(data=_solution_document(solution, config.algorithm.value, args.trace))


def _run_encode(args, settings: MinCpdSettings, console: Console) -> None:
    if args.problem == "partition":
        model = encode_partition(args.weights, settings.encoder)
    elif args.problem == "multiway":
        model = encode_multiway_partition(args.weights, args.groups, settings.encoder)
    else:
        model = encode(load_instance(args.file), settings.encoder)
    _write_model(model, args.out, console)


def _run_oracle(args, settings: MinCpdSettings, console: Console) -> None:
    oracle = settings.oracle
    if args.cap is not None:
        oracle = oracle.model_copy(update={"enumeration_cap": args.cap})
    result = brute_force_extreme(load_model(args.model), args.sense, oracle)
    console.print_json(
        data={"indices": list(result.indices), "value": result.value, "entries": result.entries_evaluated}
    )


def _run_experiment(args, settings: MinCpdSettings, console: Console) -> None:
    if args.config:
        config = ExperimentConfig.from_json(Path(args.config).read_text(encoding="utf-8"))
    elif args.kind:
        config = ExperimentConfig.default_for(args.kind)
    else:
        raise UsageError("experiment needs a config file or --kind")
    updates = {"rng_seed": args.seed}
    if args.trials is not None:
        updates["trials"] = args.trials
    config = ExperimentConfig.model_validate({**config.model_dump(), **updates})
    if args.workers is not None:
        settings.harness.workers = args.workers
    settings.harness.record_timing = args.timing

    report = run_experiment(config, settings)
    write_report(report, args.out)
    log("EXPERIMENT", f"wrote {len(report.trials)} rows to {args.out} and {summary_path(args.out)}")

    table = Table(title=f"{config.kind} summary")
    for column in report.summary.columns:
        table.add_column(str(column))
    for row in report.summary.itertuples(index=False):
        table.add_row(*(f"{v:.6g}" if isinstance(v, float) else str(v) for v in row))
    Console(stderr=True).print(table)


def _run_dp(args, settings: MinCpdSettings, console: Console) -> None:
    if args.model and args.vector:
        raise UsageError("give either a model file or --vector, not both")
    if args.model:
        model = load_model(args.model)
        if model.rank != 1 or model.is_complex:
            raise InvalidArgumentError(f"dp needs a real rank-one model, got rank {model.rank} ({model.field})")
        vectors = [factor[:, 0] for factor in model.factors]
        offset = model.offset
    elif args.vector:
        vectors, offset = [np.asarray(v) for v in args.vector], 0.0
    else:
        raise UsageError("dp needs a model file or at least one --vector")
    value, indices = dp_rank_one_extreme(vectors, args.sense)
    console.print_json(data={"indices": list(indices), "value": value + offset})


COMMANDS = {
    "solve": _run_solve,
    "encode": _run_encode,
    "oracle": _run_oracle,
    "experiment": _run_experiment,
    "dp": _run_dp,
}


def cli_main(argv: Optional[List[str]] = None) -> int:
    """
    Parse ``argv`` and run one subcommand.

    Returns 0 on success, 1 for usage and argument errors, 2 for numeric failures
    (overflow, singular systems) and 3 when an enumeration cap is exceeded. Every
    failure is reported as one ``error: <kind>: <message>`` line on stderr.
    """
    logger = None
    stderr = sys.stderr
    try:
        try:
            args = build_parser().parse_args(argv)
        except SystemExit as exc:  # --help
            return int(exc.code or 0)

        if args.log_file:
            logger = Logger(args.log_file, terminal=stderr)
            sys.stderr = logger
        settings = MinCpdSettings.from_env()
        if args.quiet:
            settings.harness.progress = False

        COMMANDS[args.command](args, settings, Console())
        return 0
    except MinCpdError as exc:
        print(f"error: {exc.kind}: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValidationError as exc:
        error = exc.errors()[0]
        where = ".".join(str(part) for part in error["loc"])
        print(f"error: argument: {where}: {error['msg']}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: argument: {exc}", file=sys.stderr)
        return 1
    finally:
        if logger is not None:
            sys.stderr = stderr
            logger.close()


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
