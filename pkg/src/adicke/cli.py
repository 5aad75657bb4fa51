"""Command-line front end for the sweep runners.

Subcommands pick the runner; a config file and/or a figure preset supply the
parameters, with explicit flags winning over both.  Exit codes: 0 on
success, 2 for configuration problems, 3 when outputs were written but an
eigensolve failed to converge or a report check failed.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from adicke.sweep import (
    PRESET_NAMES,
    ConfigError,
    SweepConfig,
    load_config,
    preset_config,
    run_berry_sweep,
    run_exact_spectrum,
    run_modes_sweep,
    run_oracle_report,
    run_surface_grid,
)

_PRESET_RUNNER = {"fig1a": "modes", "fig1b": "modes", "fig1c": "modes",
                  "fig2": "modes", "fig3": "modes", "fig4": "berry"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adicke",
        description="Parameter sweeps for the anisotropic collective "
                    "spin-boson model: polariton branches, energy surfaces, "
                    "geometric phases, exact spectra, convergence reports.")
    sub = parser.add_subparsers(dest="command", required=True)
    descriptions = {
        "modes": "sweep the polariton branches to CSV",
        "surface": "tabulate an energy surface and its stationary points",
        "berry": "sweep the geometric phases to CSV",
        "exact": "diagonalize finite sizes and dump low spectra",
        "report": "finite-size convergence report (CSV + JSON verdict)",
    }
    for name, text in descriptions.items():
        cmd = sub.add_parser(name, help=text)
        cmd.add_argument("--config", metavar="PATH",
                         help="INI-style run configuration")
        cmd.add_argument("--preset", metavar="NAME",
                         choices=[p for p in PRESET_NAMES if p != "none"],
                         help="figure preset supplying the parameters")
        cmd.add_argument("--out", metavar="PATH", help="output file path")
        cmd.add_argument("--threads", metavar="K", type=int,
                         help="worker threads for grid evaluation")
        cmd.add_argument("--tol", metavar="X", type=float,
                         help="eigensolver convergence tolerance")
    return parser


def _resolve(args: argparse.Namespace) -> SweepConfig:
    overrides = {"out": args.out, "threads": args.threads, "tol": args.tol}
    if args.config:
        config = load_config(args.config, overrides=overrides)
        if args.preset and args.preset != config.preset:
            raise ConfigError("--preset conflicts with the config file preset")
    elif args.preset:
        config = preset_config(args.preset)
        config = replace(config, **{k: v for k, v in overrides.items()
                                    if v is not None})
    else:
        config = SweepConfig(mode=args.command)
        config = replace(config, **{k: v for k, v in overrides.items()
                                    if v is not None})
    if config.preset != "none" and _PRESET_RUNNER[config.preset] != args.command:
        raise ConfigError(f"preset {config.preset} belongs to the "
                          f"{_PRESET_RUNNER[config.preset]} subcommand")
    if config.mode != args.command:
        config = replace(config, mode=args.command)
    return config


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = _resolve(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        if config.mode == "modes":
            path = run_modes_sweep(config)
        elif config.mode == "surface":
            path = run_surface_grid(config)
        elif config.mode == "berry":
            path = run_berry_sweep(config)
        elif config.mode == "exact":
            path, ok = run_exact_spectrum(config)
            if not ok:
                print(f"wrote {path} (unconverged solves flagged)",
                      file=sys.stderr)
                return 3
        else:
            path, ok = run_oracle_report(config)
            if not ok:
                print(f"wrote {path} (one or more checks failed)",
                      file=sys.stderr)
                return 3
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
