"""Command-line front end: `covest <experiment> [--config file.toml] ...`."""

from __future__ import annotations

import argparse
import sys

from .errors import CheckFailedError, ConfigError
from .experiments import EXPERIMENTS, load_config, run_experiment

_HELP = {
    "rates": "convergence-rate sweep with raw and rescaled errors",
    "compare_hmt": "compressed estimator vs randomized range-finder baseline",
    "theory_checks": "Monte-Carlo verification battery, JSON report",
    "network_sweep": "sensor-network accuracy/communication trade-off",
    "lowrank": "rank-truncated estimation of low-rank covariances",
}


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="covest",
        description="Covariance estimation experiments from independent random projections.",
    )
    sub = parser.add_subparsers(dest="experiment", required=True, metavar="experiment")
    for name in EXPERIMENTS:
        p = sub.add_parser(name, help=_HELP[name])
        p.add_argument("--config", default=None, help="TOML file with ExperimentConfig fields")
        p.add_argument("--seed", type=int, default=None, help="override master_seed")
        p.add_argument("--out", default=None, help="override the output path")
        p.add_argument("--threads", type=int, default=None, help="worker threads for trials")
    args = parser.parse_args(argv)
    try:
        config = load_config(
            args.experiment,
            args.config,
            master_seed=args.seed,
            out=args.out,
            threads=args.threads,
        )
        paths = run_experiment(config)
    except ConfigError as exc:
        print(f"covest: config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"covest: config error: cannot write output: {exc}", file=sys.stderr)
        return 2
    except CheckFailedError as exc:
        print(f"covest: check failed: {exc}", file=sys.stderr)
        return 3
    for path in paths:
        print(path)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
