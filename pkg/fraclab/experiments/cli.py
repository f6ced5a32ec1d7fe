"""
Command line entry point.

    fraclab run <config.json> [--out DIR] [--seed N] [--jobs K] [--debug]
    fraclab list

Exit status: 0 when every check of the run passed, 1 when a check failed or
a study raised, 2 for an invalid configuration.
"""

import argparse
import logging
import sys
from typing import List, Optional

from fraclab.error import ConfigError, FraclabError
from fraclab.experiments.config import EXPERIMENTS, load_config
from fraclab.experiments.runner import run_experiment

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_CONFIG = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--debug", action="store_true", help="log at DEBUG level")
    parser = argparse.ArgumentParser(prog="fraclab", description="Fractional Laplacian variational lab")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", parents=[common], help="run the experiment described by a JSON config")
    run.add_argument("config", help="path to the JSON configuration")
    run.add_argument("--out", default=None, help="output directory (default <output_dir>/<experiment>)")
    run.add_argument("--seed", type=int, default=None, help="override the config seed")
    run.add_argument("--jobs", type=int, default=None, help="worker processes over resolutions")

    commands.add_parser("list", parents=[common], help="list experiment names")
    return parser


def _list() -> int:
    width = max(map(len, EXPERIMENTS))
    for name, description in EXPERIMENTS.items():
        print(f"{name:<{width}}  {description}")
    return EXIT_OK


def _run(args: argparse.Namespace) -> int:
    try:
        config = load_config(args.config, seed=args.seed, jobs=args.jobs)
    except ConfigError as exc:
        print(f"invalid configuration {args.config}:\n{exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        manifest = run_experiment(config, args.out)
    except FraclabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED
    for check in manifest.checks:
        print(f"{'PASS' if check.passed else 'FAIL'}  {check.name}  {check.detail}")
    print(f"artifacts in {manifest.out_dir}")
    return EXIT_OK if manifest.passed else EXIT_FAILED


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.debug else logging.INFO,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    if args.command == "list":
        return _list()
    return _run(args)


if __name__ == "__main__":
    sys.exit(main())
