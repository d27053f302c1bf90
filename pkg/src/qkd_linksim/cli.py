"""Command-line interface.

Subcommands:
    point        evaluate one link length and print the key-rate report
    sweep        evaluate a range of lengths and write CSV/JSON
    max-bitrate  print the highest repetition rate the ISI target allows
    size-dcf     print the DCF length (and its attenuation) that
                 pre-compensates a target fiber length
    presets      print the built-in fiber table and model defaults
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from dataclasses import replace
from typing import Optional

from .config import ConfigError, load_config
from .dispersion import max_rep_rate
from .optimize import dcf_length_for_reach, evaluate_point
from .phys_core import LinkScenario
from .presets import FIBER_PRESETS, default_classical, default_detector, default_protocol, fiber_preset
from .qkd_metrics import KeyRateReport
from .sweep import run_sweep, write_rows

_REPORT_FIELDS = (
    "qber",
    "r_raw_bps",
    "r_sift_bps",
    "r_sec_bps",
    "i_ab",
    "i_ae",
    "eta_dead",
    "mu_opt",
    "f_rep_ghz",
    "pulse_fwhm_out_ps",
    "sec_clamped",
)


def _scenario_at(args: argparse.Namespace) -> LinkScenario:
    request = load_config(args.config)
    scenario = request.scenario
    if args.length is not None:
        scenario = replace(scenario, length_km=args.length)
    return scenario


def _report_dict(report: KeyRateReport) -> dict:
    return {name: getattr(report, name) for name in _REPORT_FIELDS}


def _cmd_point(args: argparse.Namespace) -> int:
    report = evaluate_point(_scenario_at(args))
    payload = _report_dict(report)
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for key, value in payload.items():
            print(f"{key} = {'n/a' if value is None else value}")
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    request = load_config(args.config)
    if not request.lengths:
        raise ConfigError("config has no [sweep] section (or an empty length list)")
    if args.format is not None:
        request = dataclasses.replace(request, fmt=args.format)
    rows = run_sweep(request)
    with open(args.out, "w", encoding="utf-8") as stream:
        write_rows(rows, request, stream)
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def _cmd_max_bitrate(args: argparse.Namespace) -> int:
    scenario = _scenario_at(args)
    print(f"{max_rep_rate(scenario):.4f} GHz")
    return 0


def _cmd_size_dcf(args: argparse.Namespace) -> int:
    fiber = fiber_preset(args.fiber)
    dcf = fiber_preset(args.dcf)
    length = dcf_length_for_reach(args.target_km, fiber, dcf)
    attenuation = length * dcf.attenuation_db_per_km
    print(f"{length:.2f} km, {attenuation:.2f} dB")
    return 0


def _cmd_presets(_args: argparse.Namespace) -> int:
    print("fiber presets (label: loss dB/km, dispersion ps/nm/km):")
    for number, (key, fiber) in enumerate(FIBER_PRESETS.items(), start=1):
        print(
            f"  <{number}> {key}: {fiber.attenuation_db_per_km}, "
            f"{fiber.dispersion_ps_nm_km}"
        )
    for title, defaults in (
        ("detector defaults", default_detector()),
        ("classical defaults", default_classical()),
        ("protocol defaults", default_protocol()),
    ):
        print(f"{title}:")
        for field in dataclasses.fields(defaults):
            print(f"  {field.name} = {getattr(defaults, field.name)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qkd-linksim",
        description="QKD-over-fiber link performance: dispersion, noise, QBER, "
        "and secure key rate.",
    )
    sub = parser.add_subparsers(dest="command")

    point = sub.add_parser("point", help="evaluate a single link length")
    point.add_argument("--config", required=True, help="scenario config file (TOML)")
    point.add_argument("--length", type=float, default=None, help="link length in km")
    point.add_argument("--json", action="store_true", help="emit JSON instead of key/value")
    point.set_defaults(handler=_cmd_point)

    sweep = sub.add_parser("sweep", help="evaluate a range of lengths")
    sweep.add_argument("--config", required=True, help="scenario config file (TOML)")
    sweep.add_argument("--out", required=True, help="output file")
    sweep.add_argument("--format", choices=("csv", "json"), default=None)
    sweep.set_defaults(handler=_cmd_sweep)

    maxbit = sub.add_parser("max-bitrate", help="highest ISI-compatible repetition rate")
    maxbit.add_argument("--config", required=True, help="scenario config file (TOML)")
    maxbit.add_argument("--length", type=float, required=True, help="link length in km")
    maxbit.set_defaults(handler=_cmd_max_bitrate)

    size = sub.add_parser("size-dcf", help="DCF length pre-compensating a target reach")
    size.add_argument("--target-km", type=float, required=True)
    size.add_argument("--fiber", required=True, help="transmission fiber preset name")
    size.add_argument("--dcf", default="DCF", help="compensating fiber preset name")
    size.set_defaults(handler=_cmd_size_dcf)

    presets = sub.add_parser("presets", help="print built-in presets and defaults")
    presets.set_defaults(handler=_cmd_presets)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "handler"):
        parser.print_usage(sys.stderr)
        return 2
    try:
        return args.handler(args)
    except (ConfigError, FileNotFoundError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
