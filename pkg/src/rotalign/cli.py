"""Command-line entry point.

Subcommands:
    run <config>        propagate a single experiment, write series CSV
    sweep <config>      run the config's parameter sweep, write sweep CSV
    preset <name>       execute a bundled figure preset
    validate <config>   parse and resolve a config without running it
"""

import argparse
import json
import sys

from . import __version__
from .configfile import parse_config
from .harness import (config_as_dict, preset_names, run_preset, run_single,
                      run_sweep)
from .molecule import build_ensemble
from .propagator import PropagationError


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="rotalign",
        description="Rigid-rotor alignment/orientation simulator for "
                    "shaped two-color laser pulses.")
    parser.add_argument("--version", action="version",
                        version=f"rotalign {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a single experiment config")
    p_run.add_argument("config")

    p_sweep = sub.add_parser("sweep", help="run a parameter sweep config")
    p_sweep.add_argument("config")
    p_sweep.add_argument("--workers", type=int, default=0,
                         help="worker processes (0 = auto)")

    p_preset = sub.add_parser(
        "preset", help=f"run a bundled preset: {', '.join(preset_names())}")
    p_preset.add_argument("name")
    p_preset.add_argument("--out", default="out", help="output directory")
    p_preset.add_argument("--fast", action="store_true",
                          help="thin sweep grids for a quick look")
    p_preset.add_argument("--workers", type=int, default=0)

    p_val = sub.add_parser("validate", help="check a config without running")
    p_val.add_argument("config")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            cfg = parse_config(args.config)
            result = run_single(cfg)
            ex = result.extrema
            print(f"ensemble members: {result.ensemble_size}, "
                  f"norm error: {result.norm_error:.2e}")
            print(f"max alignment during pulse: {ex.max_align_during:.4f} "
                  f"at {ex.t_max_align_during:.3f} ps")
            print(f"max alignment after pulse:  {ex.max_align_after:.4f} "
                  f"at {ex.t_max_align_after:.3f} ps")
            print(f"orientation after pulse:    +{ex.max_orient_pos_after:.4f}"
                  f" / {ex.max_orient_neg_after:.4f}")
        elif args.command == "sweep":
            cfg = parse_config(args.config)
            rows = run_sweep(cfg, workers=args.workers)
            failed = [r for r in rows if r.error]
            print(f"{len(rows)} points, {len(failed)} failed")
            for row in failed:
                print(f"  {row.param:g}: {row.error}")
            if failed:
                return 1
        elif args.command == "preset":
            written = run_preset(args.name, args.out, fast=args.fast,
                                 workers=args.workers)
            for temperature, base in written:
                print(f"T = {temperature:g} K -> {args.out}/{base}_*.csv")
        elif args.command == "validate":
            cfg = parse_config(args.config)
            ensemble = build_ensemble(cfg.molecule, cfg.temperatures[0],
                                      cfg.ensemble_epsilon)
            resolved = cfg.resolved_prop().resolve(cfg.field)
            print(json.dumps({
                "config": config_as_dict(cfg),
                "ensemble_members": len(ensemble.entries),
                "window_ps": [resolved.t_start_ps, resolved.t_end_ps],
                "dt_fs": resolved.dt_fs,
                "sample_every": resolved.sample_every,
            }, indent=2, sort_keys=True))
    except (ValueError, PropagationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
