"""The main module for running fd_backhaul from the command line.

Subcommands::

    fd-backhaul sweep <preset|spec.yml|result.csv> [--out PATH] [--format csv|json]
    fd-backhaul validate [--scenario scenario.yml]
    fd-backhaul presets
    fd-backhaul ee <preset>
    fd-backhaul moments [--scenario scenario.yml]

Exit codes: 0 on success, 1 when validation fails, 2 on invalid input or an
unwritable output path.
"""
import argparse
import math
from dataclasses import replace
from pathlib import Path
from typing import List, Optional

import pandas as pd

from fd_backhaul.energy import optimal_bits
from fd_backhaul.logger import setup_custom_logger
from fd_backhaul.montecarlo import McSettings, moment_oracle
from fd_backhaul.params import Scenario, default_scenario, load_scenario
from fd_backhaul.settings import (
    MC_REALIZATIONS,
    MC_SEED,
    MC_VALIDATE_REALIZATIONS,
    N_WORKERS,
)
from fd_backhaul.sweep import (
    FORMATS,
    SweepSpec,
    apply_series,
    describe,
    get_preset,
    load_sweep_spec,
    presets,
    run_sweep,
    series_label,
    write_results,
)
from fd_backhaul.validate import validate

logger = setup_custom_logger(__name__)


def _add_mc_flags(parser: argparse.ArgumentParser, realizations: int):
    parser.add_argument("--seed", type=int, default=None, help=f"Master seed (default {MC_SEED}).")
    parser.add_argument(
        "--realizations",
        type=int,
        default=None,
        help=f"Monte Carlo realizations (default {realizations}).",
    )
    parser.add_argument(
        "--workers", type=int, default=N_WORKERS, help="Worker threads; results do not depend on it."
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fd-backhaul",
        description="Spectral and energy efficiency of full-duplex massive MIMO backhaul "
        "with low-resolution ADCs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="Run a preset, a YAML sweep spec or a previous result file.")
    sweep.add_argument("target", help="Preset name or path to a spec/result file.")
    sweep.add_argument("--out", type=Path, default=None, help="Output file path.")
    sweep.add_argument("--format", choices=FORMATS, default="csv")
    sweep.add_argument("--progress", action="store_true", help="Show a progress bar.")
    _add_mc_flags(sweep, MC_REALIZATIONS)

    check = sub.add_parser("validate", help="Check the closed forms against Monte Carlo.")
    check.add_argument("--scenario", type=Path, default=None, help="YAML scenario file.")
    check.add_argument("--out", type=Path, default=None, help="Write every check to a CSV file.")
    _add_mc_flags(check, MC_VALIDATE_REALIZATIONS)

    sub.add_parser("presets", help="List the figure presets.")

    energy = sub.add_parser("ee", help="EE-optimal ADC resolution for every series of a preset.")
    energy.add_argument("target", help="Preset name or path to a spec/result file.")
    energy.add_argument("--out", type=Path, default=None, help="Write the table to a CSV file.")

    moments = sub.add_parser("moments", help="Print the channel-moment oracle table.")
    moments.add_argument("--scenario", type=Path, default=None, help="YAML scenario file.")
    _add_mc_flags(moments, MC_REALIZATIONS)

    return parser


def _mc_settings(args: argparse.Namespace, base: McSettings) -> McSettings:
    return replace(
        base,
        seed=base.seed if args.seed is None else args.seed,
        n_realizations=base.n_realizations if args.realizations is None else args.realizations,
        workers=args.workers,
    )


def _resolve_spec(target: str) -> SweepSpec:
    if Path(target).is_file():
        return load_sweep_spec(target)

    return get_preset(target)


def _scenario(path: Optional[Path]) -> Scenario:
    return default_scenario() if path is None else load_scenario(path)


def run_sweep_command(args: argparse.Namespace) -> int:
    spec = _resolve_spec(args.target)
    spec = replace(spec, mc=_mc_settings(args, spec.mc))
    df = run_sweep(spec, workers=args.workers, progress=args.progress)
    write_results(df, spec, args.out, args.format)

    return 0


def run_validate_command(args: argparse.Namespace) -> int:
    mc = _mc_settings(args, McSettings(n_realizations=MC_VALIDATE_REALIZATIONS))
    report = validate(_scenario(args.scenario), mc)

    if args.out is not None:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        report.checks.to_csv(args.out, index=False)
        logger.info(f"Wrote {len(report.checks)} checks to {args.out}")

    print(report.summary())

    return 0 if report.passed else 1


def run_presets_command(args: argparse.Namespace) -> int:
    table = pd.DataFrame([describe(spec) for spec in presets()])
    print(table.to_string(index=False))

    return 0


def run_ee_command(args: argparse.Namespace) -> int:
    spec = _resolve_spec(args.target)
    if spec.variable == "b":
        b_range = [int(b) for b in spec.grid if not math.isinf(b)]
    else:
        b_range = list(range(1, 16))

    rows = []
    for overrides in spec.series:
        scenario, model = apply_series(spec, overrides, skip=("b",))
        b_star, report = optimal_bits(spec.phase, scenario, model, b_range, form=spec.form)
        rows.append(
            {
                "series": series_label(overrides),
                "b_opt": b_star,
                "ee": report.ee,
                "sum_se": report.sum_se,
                "power_total": report.power_total,
            }
        )

    table = pd.DataFrame(rows)
    if args.out is not None:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        table.to_csv(args.out, index=False)
        logger.info(f"Wrote {len(table)} rows to {args.out}")
    print(table.to_string(index=False))

    return 0


def run_moments_command(args: argparse.Namespace) -> int:
    scenario = _scenario(args.scenario)
    mc = _mc_settings(args, McSettings())
    table = moment_oracle(scenario.cfg, scenario.fading, scenario.stats, mc, scenario.interf)
    print(table.to_string(index=False))

    return 0


COMMANDS = {
    "sweep": run_sweep_command,
    "validate": run_validate_command,
    "presets": run_presets_command,
    "ee": run_ee_command,
    "moments": run_moments_command,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)

    try:
        return COMMANDS[args.command](args)
    except (ValueError, OSError) as e:
        logger.error(f"{args.command} failed: {e}")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
