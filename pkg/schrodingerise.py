#!/usr/bin/env python3
"""
Schrödingerisation toolkit - command-line runner for the boundary and interface experiments
"""

import argparse
import sys

from dotenv import load_dotenv

from config.constants import (
    EXPERIMENT_DEFAULTS,
    EXPERIMENTS,
    RECOVERY_ROUTES,
    SCHEMES,
    SOLVERS,
    SPEED_BOUNDS,
)
from config.settings import load_config
from experiments.complexity import estimate_complexity
from experiments.runner import run_experiment, sweep
from loggings import default_log_file, log_error, log_info
from utils.errors import EXIT_OK, exit_code_for


def _add_run_arguments(parser: argparse.ArgumentParser):
    parser.add_argument(
        '--experiment',
        required=True,
        choices=EXPERIMENTS,
        help='Experiment to run'
    )
    parser.add_argument('--nx', type=int, help='Spatial cells (optics: x-cells)')
    parser.add_argument('--np', type=int, dest='n_p', help='Auxiliary p-nodes (even)')
    parser.add_argument('--nt', type=int, help='Time steps')
    parser.add_argument('--m', type=int, help='Velocity cells (optics only, even)')
    parser.add_argument('--T', type=float, help='Final time')
    parser.add_argument('--R', type=float, help='Right end of the p-domain')
    parser.add_argument('--l0', type=float, help='Left edge of the initial near-support in p')
    parser.add_argument('--alpha-neg', type=float, dest='alpha_neg', help='Decay rate of the warped data for p < 0')
    parser.add_argument('--scheme', choices=SCHEMES, help='Time-stepping scheme')
    parser.add_argument('--recovery', choices=RECOVERY_ROUTES, help='Recovery route')
    parser.add_argument('--solver', choices=SOLVERS, help='Schrödingerised pipeline or direct integration')
    parser.add_argument('--speed-bound', choices=SPEED_BOUNDS, dest='speed_bound', help='Left-speed estimate')
    parser.add_argument('--safety', type=float, help='CFL safety factor for the optics solver')
    parser.add_argument(
        '--compare-oracle',
        action='store_true',
        default=None,
        dest='compare_oracle',
        help='Also write the direct-integration solution'
    )
    parser.add_argument('--out', type=str, help='Output directory')
    parser.add_argument('--config', type=str, help='Config file with key = value lines')
    parser.add_argument('--seed', type=int, help='Seed for randomised suites')


def _overrides(args) -> dict:
    names = (
        'nx', 'n_p', 'nt', 'm', 'T', 'R', 'l0', 'alpha_neg', 'scheme', 'recovery', 'solver',
        'speed_bound', 'safety', 'compare_oracle', 'out', 'seed',
    )
    return {name: getattr(args, name) for name in names}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description='Schrödingerisation experiments for PDEs with boundary and interface conditions'
    )
    commands = parser.add_subparsers(dest='command', required=True)

    run = commands.add_parser('run', help='Run one experiment')
    _add_run_arguments(run)

    refine = commands.add_parser('sweep', help='Run a refinement sweep')
    _add_run_arguments(refine)
    refine.add_argument('--levels', type=int, default=3, help='Number of refinement levels')

    complexity = commands.add_parser('complexity', help='Estimate the Hamiltonian-simulation query complexity')
    complexity.add_argument('--size', type=int, required=True, help='Hamiltonian dimension')
    complexity.add_argument('--sparsity', type=int, required=True, help='Nonzeros per row')
    complexity.add_argument('--max-entry', type=float, required=True, dest='max_entry', help='Largest entry magnitude')
    complexity.add_argument('--T', type=float, required=True, help='Simulation time')
    complexity.add_argument('--epsilon', type=float, required=True, help='Target error')

    commands.add_parser('list', help='List experiments and their defaults')
    return parser


def _print_run(result):
    config = result.config
    print(f"   ✓ l_inf = {result.errors.l_inf:.6e}")
    print(f"   ✓ l2    = {result.errors.l2:.6e}")
    print(f"   ✓ l1    = {result.errors.l1:.6e}")
    if result.L is not None:
        print(f"   ✓ left p-boundary L = {result.L:.4f}")
    if result.direct_errors is not None:
        print(f"   ✓ direct oracle l_inf = {result.direct_errors.l_inf:.6e}")
    for key, value in result.diagnostics.items():
        print(f"     - {key}: {value}")
    print(f"\nFiles written to {config.out}:")
    for path in result.files:
        print(f"  {path}")


def command_run(args) -> int:
    config = load_config(args.experiment, args.config, _overrides(args))
    print("=" * 70)
    print(f"RUN {config.experiment}")
    print("=" * 70)
    print(f"nx={config.nx}  np={config.n_p}  nt={config.nt}  T={config.T:g}  solver={config.solver}  scheme={config.scheme}")
    result = run_experiment(config)
    _print_run(result)
    return EXIT_OK


def command_sweep(args) -> int:
    config = load_config(args.experiment, args.config, _overrides(args))
    print("=" * 70)
    print(f"SWEEP {config.experiment} ({args.levels} levels)")
    print("=" * 70)
    table = sweep(config, args.levels)
    print(table.to_string(index=False))
    return EXIT_OK


def command_complexity(args) -> int:
    estimate = estimate_complexity(args.size, args.sparsity, args.max_entry, args.T, args.epsilon)
    print(f"size = {estimate.size}, sparsity = {estimate.sparsity}, max entry = {estimate.max_entry:g}")
    print(f"h = T * max|H| = {estimate.h_max1:g}, epsilon = {estimate.epsilon:g}")
    print(f"estimated queries ~ {estimate.estimate:.4e}")
    log_info(f"complexity estimate {estimate.estimate:.4e} for {estimate}")
    return EXIT_OK


def command_list(args) -> int:
    for name in EXPERIMENTS:
        defaults = ", ".join(f"{key}={value}" for key, value in EXPERIMENT_DEFAULTS[name].items())
        print(f"{name:20} {defaults}")
    return EXIT_OK


COMMANDS = {
    'run': command_run,
    'sweep': command_sweep,
    'complexity': command_complexity,
    'list': command_list,
}


def main(argv=None) -> int:
    load_dotenv()
    args = build_parser().parse_args(argv)
    log_info(f"=== schrodingerise {args.command} ===")
    try:
        return COMMANDS[args.command](args)
    except Exception as e:
        code = exit_code_for(e)
        print(f"Error: {e}", file=sys.stderr)
        log_error(f"{args.command} failed with exit code {code}: {type(e).__name__}: {e}")
        print(f"See the log in {default_log_file()}", file=sys.stderr)
        return code


if __name__ == '__main__':
    sys.exit(main())
