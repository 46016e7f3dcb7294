"""
Command-line front end.

    python src/cli.py fit --model weibull --data cracks.csv --grouped --init 1,1
    python src/cli.py simulate --config src/config/normal_study.cfg --out outputs/simulation
    python src/cli.py fixtures --name all

Exit status: 0 success, 1 unexpected error, 2 usage or configuration error,
3 invalid data, 4 fit failure.
"""
import argparse
import sys
from typing import Callable, Dict, List, Optional

import pandas as pd
from pydantic import ValidationError

from config import paths
from data_models.fit_models import FitConfig, FitResult, Strategy, XiScheme, load_default_fit_config
from data_models.params import MODEL_NAMES, make_params
from em.engine import run_fit
from exceptions import (
    FitError,
    IntervalDataError,
    ModelMismatchError,
    StrategyNotSupportedError,
    StudyConfigError,
    ZeroMassIntervalError,
)
from fixtures.replay import FIXTURE_NAMES, format_fixture_report, replay_fixtures
from logger import get_logger, set_log_level
from preprocessing.ingest import read_dataset
from simulation.reporting import write_study_outputs
from simulation.study import run_study
from simulation.study_config import load_study_config
from utils import write_error_file

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_FIT = 4

ERROR_FILE_PATHS = {
    "fit": paths.FIT_ERROR_FILE_PATH,
    "simulate": paths.SIMULATE_ERROR_FILE_PATH,
    "fixtures": paths.FIXTURES_ERROR_FILE_PATH,
}


def _parse_init(model: str, text: Optional[str]):
    if text is None:
        return None
    return make_params(model, [float(token) for token in text.split(",") if token.strip()])


def build_fit_config(args: argparse.Namespace) -> FitConfig:
    """FitConfig from the JSON defaults overridden by the fit flags."""
    return load_default_fit_config(
        strategy=args.strategy,
        K=args.k,
        xi_scheme=args.xi_scheme,
        eps=args.eps,
        max_iterations=args.max_iter,
        seed=args.seed,
        initial=_parse_init(args.model, args.init),
    )


def format_fit_report(result: FitResult, exp_mean: bool = False, trace: bool = False) -> str:
    """Text report of a fit: estimate, iteration count, convergence and optionally the trace."""
    estimate = ", ".join(f"{name}={value:.10g}" for name, value in result.estimate_values(exp_mean).items())
    k_part = "" if result.strategy is Strategy.EM else f", K={result.K}"
    lines = [
        f"model: {result.model} (strategy={result.strategy.value}{k_part})",
        f"estimate: {estimate}",
        f"iterations: {result.iterations}",
        f"converged: {result.converged}",
        f"loglik: {result.final_loglik:.10g}",
    ]
    if trace:
        lines.append(result.trace_frame(exp_mean).to_string(
            index=False, float_format=lambda value: f"{value:.6g}"))
    return "\n".join(lines)


def cmd_fit(args: argparse.Namespace) -> int:
    """Fits a model to a data file and prints the result."""
    try:
        config = build_fit_config(args)
    except (ValidationError, ValueError) as exc:
        print(f"error: invalid fit settings: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        dataset = read_dataset(args.data, grouped=args.grouped)
    except OSError as exc:
        print(f"error: cannot read data: {exc}", file=sys.stderr)
        return EXIT_DATA

    result = run_fit(args.model, dataset, config)
    if args.output == "json":
        print(result.model_dump_json(indent=2))
    else:
        print(format_fit_report(result, exp_mean=args.exp_mean, trace=args.trace))
    if args.save:
        with open(args.save, "w", encoding="utf-8") as file:
            file.write(result.model_dump_json(indent=2))
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    """Runs a simulation study and writes its table."""
    try:
        config = load_study_config(args.config)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.n_jobs is not None:
        config = config.model_copy(update={"n_jobs": args.n_jobs})

    table = run_study(config)
    csv_path, text_path = write_study_outputs(table, args.out)
    for row in table.itertuples(index=False):
        k_part = "" if pd.isna(row.K) else f":{row.K}"
        flag = "" if row.valid else "  (invalid: too many failed fits)"
        print(f"{row.strategy}{k_part} {row.parameter}: bias={row.bias:.3e} "
              f"mse={row.mse:.3e} sre={row.sre:.3e} failures={row.failures}{flag}")
    print(f"Study table written to {csv_path} and {text_path}")
    return EXIT_OK


def cmd_fixtures(args: argparse.Namespace) -> int:
    """Replays embedded published examples and prints the comparisons."""
    reports = replay_fixtures(args.name)
    print("\n\n".join(format_fixture_report(report) for report in reports))
    return EXIT_OK


def _add_log_level(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        type=str.upper,
        default=None,
        help="Logging level. Defaults to $INTERVAL_EM_LOG_LEVEL or WARNING.",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="EM, Monte Carlo EM and quantile EM fits of lifetime models to interval data.")
    subparsers = parser.add_subparsers(dest="command", required=True)

    fit = subparsers.add_parser("fit", help="Fit a model to an interval or grouped CSV file.")
    fit.add_argument("--model", required=True, choices=MODEL_NAMES)
    fit.add_argument("--data", required=True, help="CSV file with lower,upper (or lower,upper,count) rows.")
    fit.add_argument("--grouped", action="store_true", help="Read the lower,upper,count schema.")
    fit.add_argument("--strategy", choices=[strategy.value for strategy in Strategy])
    fit.add_argument("--k", type=int, help="Grid size or Monte Carlo sample size per observation.")
    fit.add_argument("--xi-scheme", choices=[scheme.value for scheme in XiScheme])
    fit.add_argument("--eps", type=float, help="Relative stopping precision.")
    fit.add_argument("--max-iter", type=int, help="Iteration cap.")
    fit.add_argument("--seed", type=int, help="Seed of the Monte Carlo E-step.")
    fit.add_argument("--init", help="Comma-separated starting values in parameter order.")
    fit.add_argument("--trace", action="store_true", help="Print every iterate.")
    fit.add_argument("--output", choices=["text", "json"], default="text")
    fit.add_argument("--exp-mean", action="store_true",
                     help="Report an exponential fit as its mean 1/rate.")
    fit.add_argument("--save", help="Also write the JSON result to this file.")
    _add_log_level(fit)

    simulate = subparsers.add_parser("simulate", help="Run a Type-II censored simulation study.")
    simulate.add_argument("--config", required=True, help="Study config file (key = value lines).")
    simulate.add_argument("--out", default=paths.SIMULATION_OUTPUTS_DIR, help="Output directory.")
    simulate.add_argument("--n-jobs", type=int, help="Parallel workers; overrides the config.")
    _add_log_level(simulate)

    fixtures = subparsers.add_parser("fixtures", help="Replay the embedded published examples.")
    fixtures.add_argument("--name", required=True, choices=list(FIXTURE_NAMES) + ["all"])
    _add_log_level(fixtures)
    return parser


COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "fit": cmd_fit,
    "simulate": cmd_simulate,
    "fixtures": cmd_fixtures,
}


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parses arguments, runs the command and maps failures onto exit statuses.

    Args:
        argv (Optional[List[str]]): Arguments without the program name. Defaults to sys.argv.

    Returns:
        int: The exit status.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    if args.log_level:
        set_log_level(args.log_level)

    try:
        return COMMANDS[args.command](args)
    except StudyConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IntervalDataError as exc:
        print(f"error: invalid data: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (StrategyNotSupportedError, ModelMismatchError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FitError as exc:
        print(f"error: fit failed: {exc}", file=sys.stderr)
        return EXIT_FIT
    except ZeroMassIntervalError as exc:
        # raised by the E-step once run_fit has attached the partial trace
        if exc.partial_result is not None:
            print(f"error: fit failed: {exc}", file=sys.stderr)
            return EXIT_FIT
        print(f"error: invalid data: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception as exc:
        write_error_file(ERROR_FILE_PATHS[args.command], exc)
        logger.error(f"Unexpected error in '{args.command}': {exc}")
        print(f"error: {exc} (traceback in {ERROR_FILE_PATHS[args.command]})", file=sys.stderr)
        return EXIT_UNEXPECTED


if __name__ == "__main__":
    sys.exit(main())
