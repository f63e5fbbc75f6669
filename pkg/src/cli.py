"""Command Line Interface for the q-Schur engine.

This module provides the main CLI commands: building and caching structure
tables, running the verification suites, and exporting the matrices of the
quantum Frobenius Fr and its splitting c.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from .config import config
from .schur.frob import FrobeniusPair
from .schur.table import load_or_build_table
from .utils_io import get_timestamp, log_run, save_json
from .verify.report import all_passed, results_to_dataframe, save_report, suite_counts, summarize
from .verify.suites import SUITE_NAMES, run_suite

# Setup logging
logger = config.setup_logging()


def _set_log_level(level: Optional[str]) -> None:
    if not level:
        return
    numeric = getattr(logging, level.upper())
    for name in ("qschur", "src"):
        logging.getLogger(name).setLevel(numeric)


def _resolve_l(args) -> int:
    return config.resolve_l(args.ell, args.l_choice)


def cmd_table(args):
    """Handle table command."""
    config.validate_run(args.n, args.r)
    out = Path(args.out) if args.out else config.table_path(args.n, args.r)
    table = load_or_build_table(args.n, args.r, force=args.force, path=out)

    print(f"S(n={table.n}, r={table.r}): {len(table.basis)} basis elements, "
          f"{table.num_constants} generator constants")
    print(f"Table: {out}")
    log_run(logger, "table", {"n": args.n, "r": args.r}, {"basis": len(table.basis), "path": str(out)})
    return True


def cmd_verify(args):
    """Handle verify command."""
    fm = args.suite == "fm"
    config.validate_run(2 if fm else args.n, args.r, ell=args.p if fm else args.ell, p=args.p, fm=fm)
    started = get_timestamp()
    results = run_suite(args.suite, args.n, args.r, args.ell, _resolve_l(args), args.p)
    df = results_to_dataframe(results)

    for result in results:
        status = "PASS" if result.passed else "FAIL"
        detail = f" ({result.detail})" if result.detail and not result.passed else ""
        print(f"{status} [{result.suite}] {result.check}{detail}")

    summary = summarize(df)
    print()
    print(summary.to_string(index=False))

    if args.out:
        if not save_report(df, Path(args.out)):
            return False

    passed = all_passed(df)
    log_run(
        logger,
        "verify",
        {"suite": args.suite, "n": args.n, "r": args.r, "ell": args.ell, "p": args.p},
        {"started": started, "checks": len(df), "passed": passed, "suites": suite_counts(df)},
    )
    return passed


def cmd_map(args):
    """Handle map command."""
    l = _resolve_l(args)
    config.validate_run(args.n, args.r, ell=args.ell)
    pair = FrobeniusPair.build(args.n, args.r, args.ell, l)
    data = pair.export(args.kind)

    out = Path(args.out) if args.out else (
        config.outputs_dir / f"map_{args.kind}_n{args.n}_r{args.r}_ell{args.ell}.json"
    )
    save_json(data, out)
    print(f"{args.kind} for S({args.n},{args.ell * args.r}) <-> S({args.n},{args.r}), "
          f"ell={args.ell}, l={l}: {len(data['matrix'])} nonzero columns")
    print(f"Map: {out}")
    log_run(logger, "map", {"kind": args.kind, "n": args.n, "r": args.r, "ell": args.ell, "l": l}, {"path": str(out)})
    return True


def main(argv: Optional[List[str]] = None):
    """Main CLI entry point."""
    parser = argparse.ArgumentParser(
        description="q-Schur algebra engine: structure tables, quantum Frobenius and its splitting",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Build and cache a structure table
  qschur table --n 2 --r 2
  qschur table --n 3 --r 2 --force

  # Verification suites
  qschur verify binomials --ell 3
  qschur verify presentation --n 3 --r 2
  qschur verify fm --p 2 --r 2
  qschur verify all --n 2 --r 2 --ell 2

  # Export Fr or c
  qschur map c --n 2 --r 1 --ell 2
  qschur map fr --n 2 --r 2 --ell 2 --out fr.json
        """
    )
    parser.add_argument('--log-level', choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'], help='Override LOG_LEVEL')

    subparsers = parser.add_subparsers(dest='command', help='Available commands')

    # Table command
    table_parser = subparsers.add_parser('table', help='Build (or load) the structure table of S(n, r)')
    table_parser.add_argument('--n', type=int, default=config.n, help='Matrix size')
    table_parser.add_argument('--r', type=int, default=config.r, help='Degree')
    table_parser.add_argument('--force', action='store_true', help='Rebuild even on a cache hit')
    table_parser.add_argument('--out', help='Table file (default: cache directory)')
    table_parser.set_defaults(func=cmd_table)

    # Verify command
    verify_parser = subparsers.add_parser('verify', help='Run a verification suite')
    verify_parser.add_argument('suite', choices=list(SUITE_NAMES) + ['all'], help='Suite name')
    verify_parser.add_argument('--n', type=int, default=config.n, help='Matrix size')
    verify_parser.add_argument('--r', type=int, default=config.r, help='Degree (of the star algebra for Fr and c)')
    verify_parser.add_argument('--ell', type=int, default=config.ell, help='Order parameter ell')
    verify_parser.add_argument('--l-choice', choices=['ell', '2ell'], help='Cyclotomic index for odd ell')
    verify_parser.add_argument('--p', type=int, default=config.p, help='Prime for the Fayers-Martin comparison')
    verify_parser.add_argument('--out', help='Write a Markdown report (and CSV) here')
    verify_parser.set_defaults(func=cmd_verify)

    # Map command
    map_parser = subparsers.add_parser('map', help='Export the matrix of Fr or c')
    map_parser.add_argument('kind', choices=['fr', 'c'], help='Which map')
    map_parser.add_argument('--n', type=int, default=config.n, help='Matrix size')
    map_parser.add_argument('--r', type=int, default=config.r, help='Degree of the star algebra')
    map_parser.add_argument('--ell', type=int, default=config.ell, help='Order parameter ell')
    map_parser.add_argument('--l-choice', choices=['ell', '2ell'], help='Cyclotomic index for odd ell')
    map_parser.add_argument('--out', help='Output JSON file')
    map_parser.set_defaults(func=cmd_map)

    # Parse arguments
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return 1

    _set_log_level(args.log_level)

    # Run command
    try:
        success = args.func(args)
        return 0 if success else 1
    except KeyboardInterrupt:
        logger.info("Operation cancelled by user")
        return 1
    except Exception as e:
        logger.error(f"Unexpected error: {e}", exc_info=True)
        return 1


if __name__ == "__main__":
    sys.exit(main())
