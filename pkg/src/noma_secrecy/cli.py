"""Command-line front end: region curves, parameter sweeps, single-point checks.

Each run writes one CSV (all rows computed before anything is written) plus a
JSON manifest holding every parameter that affects the numbers.  Exit codes:
0 success, 2 configuration error, 3 numerical degeneracy exhausted retries.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .channels import draw_trusted, draw_untrusted, trial_rng
from .config import ExperimentConfig, override, parse_config
from .errors import (
    BoundaryError,
    ConfigurationError,
    DomainError,
    NumericalDegeneracyError,
)
from .optimizer import TRUSTED_SCHEMES, GridConfig, SchemeId, scheme_rates, trace_region
from .rates import PowerSplit

_LN2 = math.log(2.0)


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".9g")


def _csv(header: list[str], rows: list[list]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) if not isinstance(v, str) else v for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def _rate_unit(bits: bool) -> str:
    return "bits" if bits else "nats"


def _rate_scale(bits: bool) -> float:
    return 1.0 / _LN2 if bits else 1.0


def _manifest(cfg: ExperimentConfig, command: str, bits: bool, threads: int, extra: dict) -> dict:
    manifest = {
        "tool": "noma-secrecy",
        "version": __version__,
        "command": command,
        "scenario": cfg.scenario,
        "geometry": {
            "l1_m": cfg.l1_m,
            "l2_m": cfg.l2_m,
            "le_m": cfg.le_m,
            "lr_m": cfg.lr_m,
            "relay_count": cfg.relay_count,
            "gamma": cfg.gamma,
        },
        "p_dbm": cfg.p_dbm,
        "total_power_linear": cfg.total_power(),
        "trials": cfg.trials,
        "seed": cfg.seed,
        "schemes": [s.value for s in cfg.schemes],
        "grid": {
            "points": cfg.grid_points,
            "refine_passes": cfg.refine_passes,
            "margin": cfg.grid_margin,
        },
        "rate_unit": _rate_unit(bits),
        "threads": threads,
    }
    manifest.update(extra)
    return manifest


def run_region(cfg: ExperimentConfig, bits: bool = False, threads: int = 1) -> tuple[str, dict]:
    """Region curves for every configured scheme; one CSV row per (scheme, mu)."""
    scale = _rate_scale(bits)
    unit = _rate_unit(bits)
    mus = np.linspace(0.0, 1.0, cfg.mu_points)
    header = [
        "scheme",
        "mu",
        f"rs1_{unit}",
        f"rs2_{unit}",
        "alpha_star",
        "pbar_star",
        "delta_star",
        "trials",
    ]
    rows = []
    redraws = {}
    for scheme in cfg.schemes:
        curve = trace_region(
            scheme,
            cfg.geometry(),
            cfg.total_power(),
            mus,
            cfg.trials,
            cfg.seed,
            cfg.grid_config(),
            threads=threads,
        )
        redraws[scheme.value] = curve.redraws
        for pt in curve.points:
            rows.append(
                [
                    scheme.value,
                    pt.mu,
                    scale * pt.rates.rs1,
                    scale * pt.rates.rs2,
                    pt.split.alpha,
                    pt.split.pbar,
                    pt.split.delta,
                    cfg.trials,
                ]
            )
    manifest = _manifest(
        cfg,
        "region",
        bits,
        threads,
        {"mu_points": cfg.mu_points, "redraws": redraws, "columns": header},
    )
    return _csv(header, rows), manifest


def run_sweep(cfg: ExperimentConfig, bits: bool = False, threads: int = 1) -> tuple[str, dict]:
    """Secrecy sum rates at mu = 1/2 over the configured sweep values."""
    if cfg.sweep is None:
        raise ConfigurationError("sweep command needs sweep_parameter and sweep_values")
    scale = _rate_scale(bits)
    unit = _rate_unit(bits)
    header = [
        "scheme",
        "sweep_parameter",
        "sweep_value",
        f"sum_rate_{unit}",
        f"rs1_{unit}",
        f"rs2_{unit}",
        "alpha_star",
        "pbar_star",
        "delta_star",
        "trials",
    ]
    rows = []
    redraws = {}
    for value in cfg.sweep.values:
        geometry = cfg.geometry(**{cfg.sweep.parameter: value})
        for scheme in cfg.schemes:
            curve = trace_region(
                scheme,
                geometry,
                cfg.total_power(),
                (0.5,),
                cfg.trials,
                cfg.seed,
                cfg.grid_config(),
                threads=threads,
            )
            redraws[f"{scheme.value}@{_fmt(value)}"] = curve.redraws
            pt = curve.points[0]
            rows.append(
                [
                    scheme.value,
                    cfg.sweep.parameter,
                    value,
                    scale * (pt.rates.rs1 + pt.rates.rs2),
                    scale * pt.rates.rs1,
                    scale * pt.rates.rs2,
                    pt.split.alpha,
                    pt.split.pbar,
                    pt.split.delta,
                    cfg.trials,
                ]
            )
    manifest = _manifest(
        cfg,
        "sweep",
        bits,
        threads,
        {
            "sweep": {"parameter": cfg.sweep.parameter, "values": list(cfg.sweep.values)},
            "mu": 0.5,
            "redraws": redraws,
            "columns": header,
        },
    )
    return _csv(header, rows), manifest


def run_point(
    cfg: ExperimentConfig,
    alpha: float,
    pbar: float,
    delta: float,
    beam_weight: float = 0.5,
    bits: bool = False,
) -> tuple[str, dict]:
    """Evaluate every configured scheme at one fixed split on one realization."""
    scale = _rate_scale(bits)
    unit = _rate_unit(bits)
    split = PowerSplit(alpha, pbar, delta)
    split.validate(cfg.total_power())
    rng = trial_rng(cfg.seed, 0)
    draw = draw_trusted if cfg.scenario == "trusted" else draw_untrusted
    ch = draw(cfg.geometry(), rng)
    header = ["scheme", "seed", "alpha", "pbar", "delta", f"rs1_{unit}", f"rs2_{unit}"]
    rows = []
    for scheme in cfg.schemes:
        pair = scheme_rates(scheme, ch, split, cfg.total_power(), beam_weight=beam_weight)
        rows.append(
            [scheme.value, cfg.seed, alpha, pbar, delta, scale * pair.rs1, scale * pair.rs2]
        )
    manifest = _manifest(
        cfg,
        "point",
        bits,
        1,
        {
            "split": {"alpha": alpha, "pbar": pbar, "delta": delta},
            "beam_weight": beam_weight,
            "columns": header,
        },
    )
    return _csv(header, rows), manifest


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="noma-secrecy",
        description="Secrecy-rate region simulator for two-user downlink NOMA relaying",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (
        ("region", "trace the secrecy-rate region boundary of each scheme"),
        ("sweep", "secrecy sum rates over a geometry sweep"),
        ("point", "evaluate each scheme at a fixed power split"),
    ):
        cmd = sub.add_parser(name, help=text)
        cmd.add_argument("--config", required=True, help="path to the experiment config file")
        cmd.add_argument("--seed", type=int, default=None, help="override the config seed")
        cmd.add_argument("--trials", type=int, default=None, help="override the trial count")
        cmd.add_argument("--output", default=None, help="output CSV path (overrides config)")
        cmd.add_argument("--bits", action="store_true", help="report rates in bits instead of nats")
        cmd.add_argument(
            "--threads", type=int, default=1, help="worker processes (never changes results)"
        )
        if name == "point":
            cmd.add_argument("--alpha", type=float, required=True)
            cmd.add_argument("--pbar", type=float, required=True)
            cmd.add_argument("--delta", type=float, default=0.0)
            cmd.add_argument("--beta", type=float, default=0.5, help="beamformer weight for df/af")
    return parser


def _write_outputs(output_path: str, csv_text: str, manifest: dict) -> None:
    out = Path(output_path)
    manifest = dict(manifest)
    manifest["csv"] = out.name
    out.write_text(csv_text)
    Path(str(out) + ".manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n"
    )


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = parse_config(args.config)
        cfg = override(cfg, seed=args.seed, trials=args.trials, output_path=args.output)
        if cfg.output_path is None:
            raise ConfigurationError("no output path: set output_path in the config or pass --output")
        if args.threads < 1:
            raise ConfigurationError(f"--threads must be >= 1, got {args.threads}")
        if args.command == "region":
            csv_text, manifest = run_region(cfg, bits=args.bits, threads=args.threads)
        elif args.command == "sweep":
            csv_text, manifest = run_sweep(cfg, bits=args.bits, threads=args.threads)
        else:
            csv_text, manifest = run_point(
                cfg, args.alpha, args.pbar, args.delta, beam_weight=args.beta, bits=args.bits
            )
        _write_outputs(cfg.output_path, csv_text, manifest)
    except (ConfigurationError, DomainError, BoundaryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalDegeneracyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
