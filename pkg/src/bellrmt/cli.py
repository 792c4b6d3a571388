"""Command-line interface.

Subcommands: ``sweep`` (Monte Carlo sweep over the N grid), ``hist``
(single-point run with histogram output), ``analytic`` (closed-form
reference table as JSON), ``validate`` (oracle cross-check suite).
Exit codes: 0 success, 1 validation failure, 2 usage error, 3 runtime error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .analytic import analytic_table
from .engine import DEFAULT_GRID, SweepConfig, emit_results, run_sweep
from .ensembles import EnsembleSpec, McmcConfig
from .errors import BellRmtError
from .validate import DEFAULT_VALIDATION_SEED, run_all

DEFAULT_KS = (2, 3, 6, 12)


def _parse_k_list(text: str) -> tuple[int, ...]:
    try:
        ks = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"--k expects an integer or comma list, got {text!r}")
    if not ks or any(k < 1 for k in ks):
        raise argparse.ArgumentTypeError(f"--k entries must be >= 1, got {text!r}")
    return ks


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bellrmt",
        description="Monte Carlo estimates of Bell-inequality violations from random pure states",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="run a Monte Carlo sweep over the N grid")
    sweep.add_argument(
        "--ensemble",
        choices=("hs", "structured", "maxent", "coulomb"),
        default=None,
        help="single ensemble to run (default: hs, maxent and structured k=2,3,6,12)",
    )
    sweep.add_argument("--k", type=_parse_k_list, default=None,
                       help="structured-ensemble k values, comma separated (default 2,3,6,12)")
    sweep.add_argument("--n-min", type=int, default=None, help="smallest N kept from the grid")
    sweep.add_argument("--n-max", type=int, default=None, help="largest N kept from the grid")
    sweep.add_argument("--n-grid", default="exp",
                       help="'exp' for the default exponential grid or 'list:2,4,8,...'")
    sweep.add_argument("--samples", type=int, default=None, help="samples per grid point (default 1000)")
    sweep.add_argument("--seed", type=int, default=None, help="master seed (default 0)")
    sweep.add_argument("--bins", type=int, default=None, help="histogram bins (default 50)")
    sweep.add_argument("--out", default=None, help="output path (default: stdout, no histogram sidecar)")
    sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    sweep.add_argument("--threads", type=int, default=None,
                       help="worker threads (default: BELLRMT_THREADS or 1)")
    sweep.add_argument("--config", default=None, help="JSON file with SweepConfig fields; flags override")

    hist = sub.add_parser("hist", help="single (ensemble, N) run with histogram sidecar")
    hist.add_argument("--ensemble", choices=("hs", "structured", "maxent", "coulomb"), required=True)
    hist.add_argument("--n", type=int, required=True)
    hist.add_argument("--k", type=int, default=2, help="k for the structured ensemble")
    hist.add_argument("--samples", type=int, default=1000)
    hist.add_argument("--bins", type=int, default=50)
    hist.add_argument("--seed", type=int, default=0)
    hist.add_argument("--out", required=True)
    hist.add_argument("--threads", type=int, default=None)

    sub.add_parser("analytic", help="print the closed-form reference table as JSON")

    validate = sub.add_parser("validate", help="run the oracle cross-check suite")
    validate.add_argument("--seed", type=int, default=DEFAULT_VALIDATION_SEED)
    validate.add_argument("--quick", action="store_true",
                          help="only the fast quadrature checks (LUE relation, C_k)")
    return parser


def _resolve_threads(value: int | None) -> int:
    if value is None:
        value = int(os.environ.get("BELLRMT_THREADS", "1"))
    return max(1, value)


def _ensembles_from_args(args, parser) -> tuple[EnsembleSpec, ...]:
    ks = args.k if args.k is not None else DEFAULT_KS
    if args.ensemble is None:
        specs = [EnsembleSpec("hs"), EnsembleSpec("maxent")]
        specs += [EnsembleSpec("structured", k=k) for k in ks]
        return tuple(specs)
    if args.ensemble == "structured":
        return tuple(EnsembleSpec("structured", k=k) for k in ks)
    if args.ensemble == "coulomb":
        return (EnsembleSpec("coulomb", mcmc=McmcConfig()),)
    return (EnsembleSpec(args.ensemble),)


def _grid_from_args(args, parser) -> tuple[int, ...]:
    if args.n_grid == "exp":
        grid = DEFAULT_GRID
    elif args.n_grid.startswith("list:"):
        try:
            grid = tuple(sorted({int(part) for part in args.n_grid[5:].split(",")}))
        except ValueError:
            parser.error(f"--n-grid: cannot parse {args.n_grid!r}")
    else:
        parser.error(f"--n-grid must be 'exp' or 'list:<csv>', got {args.n_grid!r}")
    lo = args.n_min if args.n_min is not None else 2
    hi = args.n_max if args.n_max is not None else max(grid)
    grid = tuple(n for n in grid if lo <= n <= hi)
    if not grid:
        parser.error(f"--n-min/--n-max [{lo}, {hi}] leave an empty grid")
    return grid


def _ensembles_from_config(doc: dict) -> tuple[EnsembleSpec, ...]:
    specs = []
    for entry in doc:
        mcmc = McmcConfig(**entry["mcmc"]) if entry.get("mcmc") else None
        specs.append(EnsembleSpec(entry["kind"], k=entry.get("k"), mcmc=mcmc))
    return tuple(specs)


def _cmd_sweep(args, parser) -> int:
    file_cfg = {}
    if args.config is not None:
        file_cfg = json.loads(Path(args.config).read_text(encoding="utf-8"))

    if args.ensemble is not None or args.k is not None or "ensembles" not in file_cfg:
        ensembles = _ensembles_from_args(args, parser)
    else:
        ensembles = _ensembles_from_config(file_cfg["ensembles"])

    explicit_grid = args.n_grid != "exp" or args.n_min is not None or args.n_max is not None
    if explicit_grid or "n_grid" not in file_cfg:
        n_grid = _grid_from_args(args, parser)
    else:
        n_grid = tuple(file_cfg["n_grid"])

    samples = args.samples if args.samples is not None else file_cfg.get("samples_per_point", 1000)
    seed = args.seed if args.seed is not None else file_cfg.get("master_seed", 0)
    bins = args.bins if args.bins is not None else file_cfg.get("histogram_bins", 50)
    out = args.out if args.out is not None else file_cfg.get("output_path")

    cfg = SweepConfig(
        ensembles=ensembles,
        n_grid=n_grid,
        samples_per_point=samples,
        master_seed=seed,
        output_path=out,
        histogram_bins=bins,
    )
    result = run_sweep(cfg, threads=_resolve_threads(args.threads))
    emit_results(result, format=args.format, path=out)
    return 0


def _cmd_hist(args, parser) -> int:
    kind = args.ensemble
    spec = {
        "hs": EnsembleSpec("hs"),
        "maxent": EnsembleSpec("maxent"),
        "structured": EnsembleSpec("structured", k=args.k),
        "coulomb": EnsembleSpec("coulomb", mcmc=McmcConfig()),
    }[kind]
    cfg = SweepConfig(
        ensembles=(spec,),
        n_grid=(args.n,),
        samples_per_point=args.samples,
        master_seed=args.seed,
        output_path=args.out,
        histogram_bins=args.bins,
    )
    result = run_sweep(cfg, threads=_resolve_threads(args.threads))
    emit_results(result, format="csv", path=args.out)
    return 0


def _cmd_analytic() -> int:
    print(json.dumps(analytic_table().as_dict(), indent=2))
    return 0


def _cmd_validate(args) -> int:
    checks = run_all(master_seed=args.seed, quick=args.quick)
    for check in checks:
        status = "ok " if check.passed else "FAIL"
        print(f"[{status}] {check.name}: {check.detail}")
    return 0 if all(c.passed for c in checks) else 1


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    try:
        if args.command == "sweep":
            return _cmd_sweep(args, parser)
        if args.command == "hist":
            return _cmd_hist(args, parser)
        if args.command == "analytic":
            return _cmd_analytic()
        if args.command == "validate":
            return _cmd_validate(args)
        parser.error(f"unknown command {args.command!r}")
    except SystemExit as exc:
        return int(exc.code or 0)
    except (BellRmtError, OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"bellrmt: error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
