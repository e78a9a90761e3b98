"""
shockwkb command-line interface.

Usage:
    shockwkb check --config config/example_config.yaml
    shockwkb build --config config/example_config.yaml --order 1 --out output/figures
    shockwkb residual --config config/example_config.yaml --order 1 --region right
    shockwkb simulate --config config/example_config.yaml --order 1 --eps-ladder 0.2,0.1,0.05
    shockwkb example --out output/example
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from dotenv import load_dotenv

from shockwkb.config import ProblemConfig, load_config, resolve_output_dir
from shockwkb.constants import DEFAULT_LOG_LEVEL, LOG_FORMAT, VALID_ORDERS, VALID_REGIONS
from shockwkb.exceptions import ConfigurationError
from shockwkb.tools.common import handle_command_error
from shockwkb.tools.condition_tools import cmd_check
from shockwkb.tools.example_tools import cmd_example
from shockwkb.tools.field_tools import cmd_build
from shockwkb.tools.study_tools import cmd_residual, cmd_simulate

logger = logging.getLogger("shockwkb")


def setup_logging(level: str = DEFAULT_LOG_LEVEL, log_file: Optional[str] = None):
    """
    Configure the package logger (not the root logger).
    """
    console_handler = logging.StreamHandler()
    console_handler.setLevel(level)
    console_handler.setFormatter(logging.Formatter(LOG_FORMAT))

    handlers = [console_handler]
    if log_file:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_file)
        file_handler.setLevel(level)
        file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handlers.append(file_handler)

    package_logger = logging.getLogger("shockwkb")
    package_logger.setLevel(level)
    package_logger.handlers = handlers
    package_logger.propagate = False


def parse_ladder(text: str) -> List[float]:
    """'0.1,0.05,0.025' -> [0.1, 0.05, 0.025]; decimal commas are not accepted."""
    try:
        values = [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid eps ladder '{text}': expected comma-separated numbers")
    if not values:
        raise argparse.ArgumentTypeError("eps ladder is empty")
    return values


def build_parser() -> argparse.ArgumentParser:
    """Parser with one subcommand per pipeline stage."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="Output directory (default: $SHOCKWKB_OUT_DIR or ./output)")
    common.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        default=DEFAULT_LOG_LEVEL,
        help=f"Logging level (default: {DEFAULT_LOG_LEVEL})",
    )
    common.add_argument("--log-file", help="Also log to this file")

    with_config = argparse.ArgumentParser(add_help=False, parents=[common])
    with_config.add_argument("-c", "--config", required=True, help="Problem file (YAML or JSON)")
    with_config.add_argument(
        "--eps-ladder",
        type=parse_ladder,
        help="Comma-separated eps values (overrides epsilon and tail_epsilon of the config)",
    )

    with_order = argparse.ArgumentParser(add_help=False)
    with_order.add_argument(
        "--order", type=int, choices=VALID_ORDERS, default=1, help="Approximation order (default: 1)"
    )

    parser = argparse.ArgumentParser(
        prog="shockwkb",
        description="Step-like asymptotic solutions of the singularly perturbed Burgers equation",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Condition report (exit 0 iff every condition holds)
  shockwkb check --config config/example_config.yaml

  # Figure grids for Y_1 at the configured eps values
  shockwkb build --config config/example_config.yaml --order 1

  # Residual order in the right tail
  shockwkb residual --config config/example_config.yaml --order 1 --region right

  # Whole worked example
  shockwkb example --out output/example
        """,
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("check", parents=[with_config], help="Check all solvability and compatibility conditions")
    sub.add_parser("build", parents=[with_config, with_order], help="Write u, V0, V1 figure grids")
    residual = sub.add_parser("residual", parents=[with_config, with_order], help="Residual order study")
    residual.add_argument(
        "--region", choices=VALID_REGIONS, default=VALID_REGIONS[0], help="Region in (t, tau)"
    )
    sub.add_parser("simulate", parents=[with_config, with_order], help="Compare with the reference solver")
    example = sub.add_parser("example", parents=[common], help="Run the built-in worked example")
    example.add_argument("--quick", action="store_true", help="Reduced grids for a smoke run")
    return parser


def run_command(args: argparse.Namespace) -> int:
    """Dispatch a parsed command; every failure becomes an exit code."""
    out_dir = resolve_output_dir(args.out)
    try:
        if args.command == "example":
            return cmd_example(out_dir, quick=args.quick)

        config = load_config(args.config)
        if args.eps_ladder:
            try:
                config = ProblemConfig(
                    **{**config.model_dump(), "epsilon": args.eps_ladder, "tail_epsilon": None}
                )
            except ValueError as e:
                raise ConfigurationError(f"Invalid --eps-ladder: {e}")

        if args.command == "check":
            return cmd_check(config, out_dir)
        if args.command == "build":
            return cmd_build(config, args.order, out_dir)
        if args.command == "residual":
            return cmd_residual(config, args.order, args.region, out_dir)
        return cmd_simulate(config, args.order, out_dir)

    except Exception as e:
        return handle_command_error(e, args.command, context={"config": getattr(args, "config", None)})


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point."""
    load_dotenv()
    args = build_parser().parse_args(argv)
    setup_logging(level=args.log_level, log_file=args.log_file)
    logger.info(f"Arguments: {vars(args)}")
    return run_command(args)


if __name__ == "__main__":
    sys.exit(main())
