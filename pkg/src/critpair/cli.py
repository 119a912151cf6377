"""Command-line entry point: critpair <experiment> [flags].

Exit codes: 0 success, 1 configuration error, 2 selftest acceptance failure.
"""

from __future__ import annotations

import argparse
import sys

from . import acceptance
from .config import build_config, load_config_file
from .errors import ConfigError
from .experiments import (
    run_clt_experiment,
    run_conjecture_experiment,
    run_cst_check,
    run_pairing_experiment,
)

_RUNNERS = {
    "pair": run_pairing_experiment,
    "clt": run_clt_experiment,
    "conjecture": run_conjecture_experiment,
    "cst-check": run_cst_check,
}


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="critpair",
        description=(
            "Experiments on the pairing between zeros and critical points "
            "of random polynomials."
        ),
    )
    sub = parser.add_subparsers(dest="experiment", required=True)
    for name in ("pair", "clt", "conjecture", "cst-check", "selftest"):
        sp = sub.add_parser(name)
        sp.add_argument("--n", type=int, help="polynomial degree / zero count")
        sp.add_argument("--trials", type=int, help="number of independent trials")
        sp.add_argument("--seed", type=int, help="64-bit master seed")
        sp.add_argument(
            "--ensemble",
            choices=("iid", "weyl", "ginibre"),
            help="zero model (conjecture experiment)",
        )
        sp.add_argument("--u0-re", type=float, help="planted zero, real part")
        sp.add_argument("--u0-im", type=float, help="planted zero, imaginary part")
        sp.add_argument(
            "--alpha",
            type=float,
            help="localization exponent: disk radius n^-alpha, alpha in (1/2,1)",
        )
        sp.add_argument("--out", help="output directory")
        sp.add_argument("--threads", type=int, help="worker threads")
        sp.add_argument("--config", help="flat JSON config file")
    return parser


_FLAG_TO_FIELD = {
    "n": "n",
    "trials": "trials",
    "seed": "master_seed",
    "ensemble": "ensemble",
    "u0_re": "u0_re",
    "u0_im": "u0_im",
    "alpha": "r_exponent",
    "out": "output_dir",
    "threads": "threads",
}


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        file_values = load_config_file(args.config) if args.config else {}
        cli_values = {"experiment": args.experiment}
        for flag, field in _FLAG_TO_FIELD.items():
            value = getattr(args, flag)
            if value is not None:
                cli_values[field] = value
        cfg = build_config(file_values, cli_values)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1

    if cfg.experiment == "selftest":
        results = acceptance.run_all(out_dir=cfg.output_dir)
        failed = [r for r in results if not r.ok]
        print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
        return 2 if failed else 0

    try:
        _RUNNERS[cfg.experiment](cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {cfg.output_dir}/")
    return 0


if __name__ == "__main__":
    sys.exit(main())
