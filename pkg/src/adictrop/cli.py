"""
Command-line interface for adictrop.

Usage:
    adictrop trop "x + y + 1" --format svg
    adictrop initial "x + y + 1" --at 0,0
    adictrop chart --cone middle.json --gamma 1 --uniformizer p
    adictrop model --complex C.json
    adictrop tower --insert 1/2,1/4,1/8 --format text
    adictrop check --seed 7

Every subcommand writes one artifact to stdout in the selected format and,
with --output-dir, every available format to files. Failures write a single
JSON object to stderr.
"""

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from adictrop import __version__
from adictrop.errors import AdicTropError, ConfigError, FieldProfileError, ParseError
from adictrop.export.schemas import ErrorArtifact
from adictrop.models.config import JobConfig, load_config
from adictrop.runner import JobRunner, RunResult

logger = logging.getLogger(__name__)

USAGE_ERRORS = (ConfigError, ParseError, FieldProfileError)


def setup_logging(verbose: bool = False, quiet: bool = False) -> None:
    """Configure logging for the CLI.

    Args:
        verbose: If True, set log level to DEBUG
        quiet: If True, set log level to WARNING (only show warnings and errors)
    """
    if quiet:
        level = logging.WARNING
    elif verbose:
        level = logging.DEBUG
    else:
        level = logging.INFO

    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(levelname)s - %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
        stream=sys.stderr,
    )


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)

    # Field profile
    common.add_argument("--config", type=str, default=None, help="JSON job file")
    common.add_argument("--field", type=str, default=None, help='Residue field: "Q" or "F<p>"')
    common.add_argument("--gamma", type=int, default=None, help="Value group (1/d)Z, given by d")
    common.add_argument("--uniformizer", type=str, default=None, help="Symbol of valuation 1")

    # Output options
    common.add_argument(
        "-f", "--format",
        dest="output_format",
        choices=["json", "dot", "svg", "text"],
        default=None,
        help="Format written to stdout (default: json)",
    )
    common.add_argument(
        "-o", "--output-dir",
        type=str,
        default=None,
        help="Also write every available format to this directory",
    )

    # Execution options
    common.add_argument("--seed", type=int, default=None, help="Seed for the oracle suites")
    common.add_argument("--workers", type=int, default=None, help="Threads for per-cell work")
    common.add_argument(
        "--degree-bound", type=int, default=None, help="Largest relation degree in chart output"
    )
    common.add_argument(
        "--assume-complete",
        action="store_true",
        default=None,
        help="Assert completeness of a complex in dimension 3",
    )

    # Logging options
    common.add_argument(
        "-v", "--verbose",
        action="store_true",
        help="Enable verbose output (debug level logging)",
    )
    common.add_argument(
        "-q", "--quiet",
        action="store_true",
        help="Suppress informational output (only show warnings and errors)",
    )
    return common


def parse_args(args: Optional[List[str]] = None) -> argparse.Namespace:
    """Parse command-line arguments.

    Args:
        args: Optional list of arguments. If None, uses sys.argv.

    Returns:
        Parsed arguments namespace
    """
    parser = argparse.ArgumentParser(
        prog="adictrop",
        description="Exact tropical and model-theoretic computations over a valued field.",
        epilog='Example: adictrop trop "x + y + 1" --format svg',
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = _common_options()
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("trop", parents=[common], help="Tropical hypersurface of a polynomial")
    p.add_argument("poly", help="Polynomial text, inline JSON or a .json file")

    p = sub.add_parser("initial", parents=[common], help="Initial form at a point")
    p.add_argument("poly")
    p.add_argument("--at", required=True, help='Gamma-rational point, e.g. "1/2,0"')

    p = sub.add_parser("explode", parents=[common], help="Cell -> initial degeneration table")
    p.add_argument("poly")
    p.add_argument("--refine", type=str, default=None, help="Complex JSON refining Trop(f)")

    p = sub.add_parser("chart", parents=[common], help="Tilted semigroup of an admissible cone")
    p.add_argument("--cone", required=True, help="Cone JSON")
    p.add_argument("--no-oracle", action="store_true", help="Skip the box check of the Hilbert basis")

    p = sub.add_parser("model", parents=[common], help="Special fiber of the model of a complex")
    p.add_argument("--complex", dest="complex_path", required=True, help="Complex JSON")
    p.add_argument(
        "--partial", action="store_true", help="Accept a complex that does not cover N_R"
    )

    p = sub.add_parser("metrized", parents=[common], help="Metrized complex of a plane curve")
    p.add_argument("poly")
    p.add_argument("--refine", type=str, default=None, help="Complex JSON refining Trop(f)")
    p.add_argument("--schon", action="store_true", help="Assert that the curve is schoen")

    p = sub.add_parser("tower", parents=[common], help="Refinement tower over a decomposition of R")
    p.add_argument("--insert", required=True, help='Inserted points, e.g. "1/2,1/4,1/8"')
    p.add_argument(
        "--complex", dest="complex_path", default=None, help="Base complex JSON (default: [0, 1])"
    )
    p.add_argument("--vertex", type=str, default=None, help="Distinguished vertex v")

    p = sub.add_parser("extended", parents=[common], help="Extended tropicalization in P^n")
    p.add_argument("poly", help="Homogeneous polynomial")

    p = sub.add_parser("check", parents=[common], help="Run the built-in oracle suites")
    p.add_argument(
        "--suite",
        dest="suites",
        action="append",
        default=None,
        help="Suite to run; repeat for several (default: all)",
    )

    return parser.parse_args(args)


def create_config_from_args(args: argparse.Namespace) -> JobConfig:
    """Create a JobConfig from the job file, the flags and the environment.

    Args:
        args: Parsed arguments namespace

    Returns:
        Validated JobConfig
    """
    inputs = [
        path
        for path in (
            getattr(args, "refine", None),
            getattr(args, "cone", None),
            getattr(args, "complex_path", None),
        )
        if path
    ]
    return load_config(
        args.config,
        field=args.field,
        gamma=args.gamma,
        uniformizer=args.uniformizer,
        inputs=inputs or None,
        output_format=args.output_format,
        output_dir=args.output_dir,
        seed=args.seed,
        workers=args.workers,
        degree_bound=args.degree_bound,
        assume_complete=args.assume_complete,
    )


def command_options(args: argparse.Namespace) -> Dict[str, Any]:
    """Keyword arguments of the runner method for the parsed subcommand."""
    command = args.command
    if command == "trop":
        return {"poly": args.poly}
    if command == "initial":
        return {"poly": args.poly, "at": args.at}
    if command == "explode":
        return {"poly": args.poly, "refine": args.refine}
    if command == "chart":
        return {"cone": args.cone, "oracle": not args.no_oracle}
    if command == "model":
        return {"complex_path": args.complex_path, "partial": args.partial}
    if command == "metrized":
        return {"poly": args.poly, "refine": args.refine, "schon": args.schon}
    if command == "tower":
        return {"insert": args.insert, "complex_path": args.complex_path, "vertex": args.vertex}
    if command == "extended":
        return {"poly": args.poly}
    return {"suites": args.suites}


def emit_error(code: str, message: str, position: Optional[int] = None) -> None:
    """Write the machine-readable error object to stderr."""
    error = ErrorArtifact(error=code, message=message, position=position)
    sys.stderr.write(error.to_json() + "\n")


def _report(exc: BaseException) -> int:
    if isinstance(exc, ValidationError):
        emit_error(ConfigError.code, str(exc))
        return 2
    if isinstance(exc, FileNotFoundError):
        emit_error("file_not_found", f"{exc.filename}: no such file")
        return 2
    assert isinstance(exc, AdicTropError)
    emit_error(exc.code, str(exc), getattr(exc, "position", None))
    return 2 if isinstance(exc, USAGE_ERRORS) else 1


def print_summary(result: RunResult) -> None:
    """Log where the artifacts went and the outcome of a check run."""
    if result.command == "check":
        failed = [s.name for s in result.artifact.suites if not s.passed]  # type: ignore[attr-defined]
        if failed:
            logger.warning(f"Failing suites: {', '.join(failed)}")
        else:
            logger.info("All oracle suites passed")


def main(args: Optional[List[str]] = None) -> int:
    """Main entry point for the CLI.

    Args:
        args: Optional list of command-line arguments

    Returns:
        Exit code (0 on success, 1 for computation errors or failing suites,
        2 for usage and configuration errors)
    """
    parsed_args = parse_args(args)
    setup_logging(verbose=parsed_args.verbose, quiet=parsed_args.quiet)

    try:
        config = create_config_from_args(parsed_args)
    except (AdicTropError, ValidationError, FileNotFoundError) as exc:
        _report(exc)
        return 2

    try:
        result = JobRunner(config).run(parsed_args.command, **command_options(parsed_args))
        output = result.render(config.output_format)
        if config.output_dir:
            result.write(config.output_dir)
    except (AdicTropError, ValidationError, FileNotFoundError) as exc:
        if parsed_args.verbose:
            logger.exception(f"{parsed_args.command} failed")
        return _report(exc)

    sys.stdout.write(output)
    print_summary(result)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
