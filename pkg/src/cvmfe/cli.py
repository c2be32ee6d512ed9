#!/usr/bin/env python
# coding=utf-8

# -------------------------------------------------------------------------------
# Name:        cli.py
# Purpose:     Command-line entry point
#
# Created:     08-03-2026
# Licence:     refer to the LICENSE file
# -------------------------------------------------------------------------------
"""``cvmfe`` command line.

Subcommands::

    cvmfe generate --rows 16 --cols 16 --seed 7 --out g.txt
    cvmfe analyze  --grid g.txt --json-out g.json
    cvmfe minimize --grid g.txt --h 1.2 --restarts 4 --out best.txt --trace-csv t.csv
    cvmfe pipeline --config configs/h12_world.toml --out-dir run1
    cvmfe oracle   --rows 4 --cols 4 --h 1.2 --json-out oracle.json
    cvmfe varbayes --joint-json joint.json --q-json q.json --json-out vb.json

Every run writes a ``*.manifest.json`` (``manifest.json`` for directory outputs).
Exit codes: 0 success, 1 file error, 2 usage or validation error, 3 numerical
failure.
"""

__all__ = ["build_parser", "run", "main"]

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Sequence

import psutil

from . import __version__
from .blanket.config import PipelineConfig
from .blanket.pipeline import run_pipeline
from .exact.enumeration import enumerate_min_free_energy
from .lattice.config_vars import count_config_vars
from .lattice.grid import new_random, read_grid, write_grid
from .minimize.anneal import anneal_profile
from .minimize.protocol import DEFAULT_STALL_WINDOW
from .thermo.cvm_free_energy import (
    CvmDomainError,
    free_energy_cvm,
    grid_eps_from_h,
    grid_h_from_eps,
)
from .thermo.equilibrium import EstimationFailureError, estimate_h
from .utils.log_setup import configure_logging
from .utils.manifest import RunManifest, dump_json
from .varbayes.distributions import DiscreteJoint, Distribution, conditional_from_joint
from .varbayes.identities import decompose, jensen_chain_check

_logger = logging.getLogger("cvmfe.Cli")

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


def _manifest_path(primary: Path) -> Path:
    return primary.parent / f"{primary.name}.manifest.json"


def _start_manifest(args: argparse.Namespace) -> RunManifest:
    config = {k: v for k, v in vars(args).items() if k != "handler"}
    return RunManifest(command=args.command, config=config, versions={"cvmfe": __version__})


def _eps1(args: argparse.Namespace) -> Optional[float]:
    if getattr(args, "h", None) is not None:
        return grid_eps_from_h(args.h)
    return getattr(args, "eps1", None)


def cmd_generate(args: argparse.Namespace) -> None:
    manifest = _start_manifest(args)
    grid = new_random(args.rows, args.cols, args.seed)
    manifest.add_output(write_grid(grid, args.out))
    manifest.write(_manifest_path(args.out))
    print(f"Grid {grid.rows}x{grid.cols} written to {args.out}")


def cmd_analyze(args: argparse.Namespace) -> None:
    manifest = _start_manifest(args)
    cv = count_config_vars(read_grid(args.grid))
    eps1 = _eps1(args)
    estimate: Optional[Dict[str, Any]] = None
    try:
        h_mean, candidates = estimate_h(cv)
        estimate = {
            "h_mean": h_mean,
            "candidates": [{"variable": n, "h": h} for n, h in candidates],
        }
    except (EstimationFailureError, CvmDomainError) as exc:
        if eps1 is None:
            raise
        _logger.warning("h estimation skipped (%s), reporting the given interaction only", exc)
    if eps1 is None:
        assert estimate is not None
        eps1 = grid_eps_from_h(estimate["h_mean"])
    report = free_energy_cvm(cv, eps1)
    payload = {
        "config_vars": cv.to_dict(),
        "h_estimate": estimate,
        "thermo": report.to_dict(),
    }
    manifest.add_output(dump_json(payload, args.json_out))
    manifest.write(_manifest_path(args.json_out))
    print(f"F={report.free_energy:.9f} H={report.enthalpy:.9f} S={report.entropy:.9f}")


def cmd_minimize(args: argparse.Namespace) -> None:
    manifest = _start_manifest(args)
    grid = read_grid(args.grid)
    eps1 = _eps1(args)
    assert eps1 is not None
    result = anneal_profile(
        grid,
        eps1,
        args.restarts,
        args.trials,
        args.seed,
        stall_window=args.stall_window,
        threads=args.threads,
    )
    manifest.add_output(write_grid(result.grid, args.out))
    if args.trace_csv is not None:
        manifest.add_output(result.best_trace.to_csv(args.trace_csv))
    if args.json_out is not None:
        payload = {
            "best_index": result.best_index,
            "thermo": result.report.to_dict(),
            "restarts": [t.summary() for t in result.traces],
        }
        manifest.add_output(dump_json(payload, args.json_out))
    manifest.write(_manifest_path(args.out))
    print(f"Best of {args.restarts}: F={result.report.free_energy:.9f}")


def cmd_pipeline(args: argparse.Namespace) -> None:
    manifest = _start_manifest(args)
    cfg = PipelineConfig.from_file(args.config)
    manifest.config["pipeline"] = cfg.to_dict()
    report = run_pipeline(cfg, threads=args.threads)
    out_dir: Path = args.out_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest.add_output(dump_json(report.to_dict(), out_dir / "report.json"))
    manifest.add_output(write_grid(report.external, out_dir / "external.txt"))
    manifest.add_output(write_grid(report.representation, out_dir / "representation.txt"))
    manifest.add_output(write_grid(report.model, out_dir / "model.txt"))
    for name, trace in report.traces.items():
        manifest.add_output(trace.to_csv(out_dir / f"trace_{name}.csv"))
    manifest.write(out_dir / "manifest.json")
    print(f"h_estimated={report.h_estimated:.6f} divergence={report.divergence:.6g}")


def cmd_oracle(args: argparse.Namespace) -> None:
    manifest = _start_manifest(args)
    eps1 = _eps1(args)
    assert eps1 is not None
    result = enumerate_min_free_energy(args.rows, args.cols, eps1, threads=args.threads)
    payload = {**result.to_dict(), "h": grid_h_from_eps(eps1)}
    manifest.add_output(dump_json(payload, args.json_out))
    manifest.write(_manifest_path(args.json_out))
    print(f"min F={result.min_free_energy:.12f} over {result.states_enumerated} states")


def cmd_varbayes(args: argparse.Namespace) -> None:
    manifest = _start_manifest(args)
    joint = DiscreteJoint.load(args.joint_json)
    j = args.blanket_state
    q = (
        Distribution.load(args.q_json)
        if args.q_json is not None
        else conditional_from_joint(joint, j)
    )
    parts = decompose(q, joint, j)
    payload = {
        "blanket_state": j,
        "q": q.to_dict(),
        "posterior": conditional_from_joint(joint, j).to_dict(),
        "decomposition": parts.to_dict(),
        "jensen": jensen_chain_check(joint, j, q).to_dict(),
        "theta": joint.theta,
    }
    manifest.add_output(dump_json(payload, args.json_out))
    manifest.write(_manifest_path(args.json_out))
    print(f"F={parts.free_energy:.12f} KL={parts.kl_posterior:.3e}")


def _interaction(parser: argparse.ArgumentParser, required: bool) -> None:
    group = parser.add_mutually_exclusive_group(required=required)
    group.add_argument("--eps1", type=float, help="interaction enthalpy")
    group.add_argument(
        "--h", type=float, help="equilibrium h, applied to grids as eps1 = ln h"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cvmfe", description="2-D CVM free-energy engine"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--threads",
        type=int,
        default=psutil.cpu_count() or 1,
        help="worker threads for restarts and enumeration (default: CPU count)",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    parser.add_argument(
        "--plain-logs", action="store_true", help="plain text instead of JSON log records"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="random balanced grid")
    gen.add_argument("--rows", type=int, required=True)
    gen.add_argument("--cols", type=int, required=True)
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--out", type=Path, required=True)
    gen.set_defaults(handler=cmd_generate)

    ana = sub.add_parser("analyze", help="configuration variables and free energy")
    ana.add_argument("--grid", type=Path, required=True)
    _interaction(ana, required=False)
    ana.add_argument("--json-out", type=Path, required=True)
    ana.set_defaults(handler=cmd_analyze)

    mini = sub.add_parser("minimize", help="swap-protocol minimization")
    mini.add_argument("--grid", type=Path, required=True)
    _interaction(mini, required=True)
    mini.add_argument("--trials", type=int, default=None, help="per restart (default 10 N^2)")
    mini.add_argument("--restarts", type=int, default=1)
    mini.add_argument("--seed", type=int, default=0)
    mini.add_argument("--stall-window", type=int, default=DEFAULT_STALL_WINDOW)
    mini.add_argument("--out", type=Path, required=True)
    mini.add_argument("--trace-csv", type=Path, default=None)
    mini.add_argument("--json-out", type=Path, default=None)
    mini.set_defaults(handler=cmd_minimize)

    pipe = sub.add_parser("pipeline", help="external -> representation -> model run")
    pipe.add_argument("--config", type=Path, required=True)
    pipe.add_argument("--out-dir", type=Path, required=True)
    pipe.set_defaults(handler=cmd_pipeline)

    ora = sub.add_parser("oracle", help="exhaustive minimum on a small grid")
    ora.add_argument("--rows", type=int, required=True)
    ora.add_argument("--cols", type=int, required=True)
    _interaction(ora, required=True)
    ora.add_argument("--json-out", type=Path, required=True)
    ora.set_defaults(handler=cmd_oracle)

    vb = sub.add_parser("varbayes", help="variational free-energy decomposition")
    vb.add_argument("--joint-json", type=Path, required=True)
    vb.add_argument("--q-json", type=Path, default=None, help="default: exact posterior")
    vb.add_argument("--blanket-state", type=int, default=0)
    vb.add_argument("--json-out", type=Path, required=True)
    vb.set_defaults(handler=cmd_varbayes)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse ``argv``, run the subcommand and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    configure_logging(verbose=args.verbose, json_output=not args.plain_logs)
    handler: Callable[[argparse.Namespace], None] = args.handler
    try:
        handler(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
