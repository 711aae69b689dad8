"""
Main Entry Point for the Short-Pulse / Sine-Gordon Simulation Runner

Usage:
    # Evolve the data described in a JSON run config
    python run.py simulate --config runs/certified.json

    # Certificate for a CSV state
    python run.py certify --input state.csv

    # Show help
    python run.py --help

Exit codes: 0 success, 1 usage or configuration error, 2 halted evolution.
"""

import sys
import argparse
import uuid
from typing import Any, Dict, List, Optional

from commands import COMMANDS, EXIT_USAGE, load_run_config
from commands.sweep import run_sweep
from config import Config
from error_handling import SimulationError
from structured_logging import StructuredLogger


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    return {
        "output_dir": args.output_dir,
        "label": args.label,
        "t_final": args.t_final,
        "L": args.L,
        "N": args.N,
        "amplitude": args.amplitude,
        "kind": args.kind,
        "input": args.input,
        "method": args.stepper,
        "dt": args.dt,
        "tol": args.tol,
        "q_c_bound": args.q_c_bound,
        "study": getattr(args, "study", None),
        "ladder": getattr(args, "ladder", None),
        "kernel_times": getattr(args, "times", None),
    }


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subparser per command and shared override flags."""
    parser = argparse.ArgumentParser(
        description="Short-pulse / sine-Gordon simulation and certification runner",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Certified run to T = 5 with the method of lines
  python run.py simulate --config run.json --t-final 5 --dt 1e-3

  # Certificate for an amplitude
  python run.py certify --amplitude 0.1

  # Short-pulse fields of a CSV state
  python run.py transform --input state.csv --output-dir out

  # Kernel bounds table
  python run.py kernels --times 0.1 1 2 10

  # Temporal self-convergence
  python run.py convergence --study mol_dt --ladder 0.05 0.025 0.0125
        """
    )

    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument('--config', help='JSON run configuration')
    shared.add_argument('--output-dir', help='Output directory (overrides OUTPUT_DIR and the config)')
    shared.add_argument('--label', help='Run label used in output file names')
    shared.add_argument('--t-final', type=float, help='Final time')
    shared.add_argument('--L', type=float, help='Grid half width')
    shared.add_argument('--N', type=int, help='Number of grid points')
    shared.add_argument('--amplitude', type=float, help='Initial-data amplitude')
    shared.add_argument('--kind', help='Initial-data kind')
    shared.add_argument('--input', help='CSV file (y,value) with initial data')
    shared.add_argument('--stepper', choices=['mol', 'picard'], help='Time stepper')
    shared.add_argument('--dt', type=float, help='Maximum time step')
    shared.add_argument('--tol', type=float, help='Picard tolerance')
    shared.add_argument('--q-c-bound', type=float, help='Sup-norm ceiling for q')
    shared.add_argument('--workers', type=int, help='Process pool size for sweeps')
    shared.add_argument('--quiet', action='store_true', help='No console logging')

    subparsers = parser.add_subparsers(dest='mode', help='Command')
    subparsers.add_parser('simulate', parents=[shared], help='Evolve initial data')
    subparsers.add_parser('certify', parents=[shared], help='Global well-posedness certificate')
    subparsers.add_parser('transform', parents=[shared], help='Hodograph transform to x, u')
    kernels_parser = subparsers.add_parser('kernels', parents=[shared], help='Bessel kernel bounds table')
    kernels_parser.add_argument('--times', type=float, nargs='+', help='Times t > 0')
    convergence_parser = subparsers.add_parser('convergence', parents=[shared], help='Refinement-ladder study')
    convergence_parser.add_argument('--study', choices=['mol_dt', 'kernel_n'], help='Study kind')
    convergence_parser.add_argument('--ladder', type=float, nargs='+', help='dt values or grid sizes')
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments, run one command (or a sweep) and return the exit code.

    Errors are reported on standard error; results go to the output directory.
    """
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.mode:
        parser.print_help(sys.stderr)
        return EXIT_USAGE

    try:
        Config.validate()
        config = load_run_config(args.config, _overrides(args))
    except SimulationError as e:
        print(f"{args.mode}: {type(e).__name__}: {e.message}", file=sys.stderr)
        return EXIT_USAGE

    logger = StructuredLogger(
        session_id=f"{args.mode}-{config.label}-{uuid.uuid4().hex[:8]}",
        log_dir=Config.LOG_DIR,
        console_output=not args.quiet,
        log_level=Config.LOG_LEVEL,
    )
    try:
        if config.sweep:
            result = run_sweep(args.mode, config, max_workers=args.workers, logger=logger)
        else:
            result = COMMANDS[args.mode](logger).run(config)
    finally:
        logger.close()

    if not result.success:
        print(f"{args.mode}: {result.error}", file=sys.stderr)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
