"""Command-line entry point: ``python -m src.cli {rank,check,simulate,diagnose} ...``.

Reports go to standard output as JSON (or CSV for ``simulate --format csv``);
logs and, on a terminal, a short summary go to standard error.

Exit codes: 0 success, 1 input or usage error, 2 infeasible or singular
arithmetic solution.
"""
import argparse
import logging
import sys
from typing import Callable, List, Optional, TextIO

from pydantic import ValidationError

from src import __version__
from src.config.settings import settings
from src.models.experiments import ExperimentConfig
from src.models.pairwise import HreProblem
from src.services.consistency import validate
from src.services.errors import HreError, SingularMatrixError
from src.services.experiments import run_experiment
from src.services.hre import solve_geometric
from src.services.loaders import load_known, load_matrix, load_solution
from src.services.optimality import optimality_report
from src.services.ranking import METHODS, rank
from src.services.reporting import (
    render_csv,
    render_json,
    summarize_consistency,
    summarize_experiment,
    summarize_rank,
)

logger = logging.getLogger("src.cli")

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INFEASIBLE = 2


class UsageError(Exception):
    """Raised instead of exiting when argument parsing fails."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: error: {message}")


def _k_rule(value: str):
    if value == "random":
        return value
    try:
        return int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'random' or an integer, got {value!r}")


def _positive_int(value: str) -> int:
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {value!r}")
    if number < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {number}")
    return number


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hre", description=settings.app_description)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="Log debug output to stderr")
    parser.add_argument(
        "--precision", type=_positive_int, default=settings.output_precision,
        help="Significant digits in reports (default: %(default)s)",
    )
    # per-command --precision; when absent the top-level value stands
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--precision", type=_positive_int, default=argparse.SUPPRESS,
        help="Significant digits in reports",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    rank_parser = sub.add_parser("rank", parents=[common], help="Derive priorities from a judgment matrix")
    rank_parser.add_argument("matrix", help="CSV matrix file")
    rank_parser.add_argument("--known", help="JSON file of known values, e.g. {\"2\": 5}")
    rank_parser.add_argument("--method", choices=METHODS, default=settings.default_method)
    rank_parser.add_argument("--base", type=float, default=None, help="Logarithm base (default: 10)")
    rank_parser.add_argument("--normalize", action="store_true", help="Report priorities summing to 1")

    check_parser = sub.add_parser("check", parents=[common], help="Reciprocity, consistency and Koczkodaj index")
    check_parser.add_argument("matrix", help="CSV matrix file")

    sim_parser = sub.add_parser("simulate", parents=[common], help="Randomized feasibility experiment")
    sim_parser.add_argument("--n-min", type=int, default=4)
    sim_parser.add_argument("--n-max", type=int, default=9)
    sim_parser.add_argument("--trials", type=_positive_int, default=100)
    sim_parser.add_argument("--sigma", type=float, nargs="+", default=[0.5, 1.0, 2.0])
    sim_parser.add_argument("--seed", type=int, default=0)
    sim_parser.add_argument("--k-rule", type=_k_rule, default="random", help="'random' or a fixed count")
    sim_parser.add_argument("--scale-bound", type=float, default=settings.scale_bound)
    sim_parser.add_argument("--workers", type=_positive_int, default=settings.simulation_workers)
    sim_parser.add_argument("--format", choices=("json", "csv"), default="json")

    diag_parser = sub.add_parser("diagnose", parents=[common], help="Optimality report for a solution")
    diag_parser.add_argument("matrix", help="CSV matrix file")
    diag_parser.add_argument("--known", help="JSON file of known values")
    diag_parser.add_argument("--solution", help="JSON array of priorities; computed when omitted")
    diag_parser.add_argument("--base", type=float, default=None)
    return parser


def _cmd_rank(args, out: TextIO, summary: Callable[[str], None]) -> int:
    matrix = load_matrix(args.matrix)
    reference = load_known(args.known) if args.known else None
    report = rank(matrix, reference, method=args.method, base=args.base, normalize=args.normalize)
    out.write(render_json(report, args.precision))
    summary(summarize_rank(report))
    return EXIT_OK if report.feasible else EXIT_INFEASIBLE


def _cmd_check(args, out: TextIO, summary: Callable[[str], None]) -> int:
    report = validate(load_matrix(args.matrix))
    out.write(render_json(report, args.precision))
    summary(summarize_consistency(report))
    return EXIT_OK


def _cmd_simulate(args, out: TextIO, summary: Callable[[str], None]) -> int:
    config = ExperimentConfig(
        n_min=args.n_min,
        n_max=args.n_max,
        k_rule=args.k_rule,
        trials=args.trials,
        sigmas=tuple(args.sigma),
        scale_bound=args.scale_bound,
        seed=args.seed,
        workers=args.workers,
    )
    result = run_experiment(config)
    out.write(render_csv(result, args.precision) if args.format == "csv" else render_json(result, args.precision))
    summary(summarize_experiment(result))
    return EXIT_OK


def _cmd_diagnose(args, out: TextIO, summary: Callable[[str], None]) -> int:
    matrix = load_matrix(args.matrix)
    reference = load_known(args.known) if args.known else None
    unknown = None
    if reference is not None:
        unknown = HreProblem(matrix=matrix, reference=reference).unknown_positions
    if args.solution:
        solution = load_solution(args.solution)
    elif reference is not None:
        solution = solve_geometric(HreProblem(matrix=matrix, reference=reference), base=args.base)
    else:
        raise ValueError("diagnose needs --solution or --known to compute one")
    report = optimality_report(solution, matrix, unknown=unknown)
    out.write(render_json(report, args.precision))
    summary(f"e = {report.error_value:.6g}, max |grad| = {report.gradient_max:.3e}")
    return EXIT_OK


COMMANDS = {
    "rank": _cmd_rank,
    "check": _cmd_check,
    "simulate": _cmd_simulate,
    "diagnose": _cmd_diagnose,
}


def main(argv: Optional[List[str]] = None, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    """Run one command and return its exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_INPUT

    logging.basicConfig(
        level=logging.DEBUG if args.verbose or settings.debug else logging.WARNING,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=err,
    )

    def summary(text: str) -> None:
        if err.isatty():
            err.write(text + "\n")

    try:
        return COMMANDS[args.command](args, out, summary)
    except SingularMatrixError as exc:
        err.write(f"error: no solution: {exc}\n")
        return EXIT_INFEASIBLE
    except (HreError, ValidationError, ValueError, OSError) as exc:
        logger.debug("Command %s failed", args.command, exc_info=True)
        err.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
