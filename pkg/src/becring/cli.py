"""Command-line entry point.

Verbs:
  run          simulate one scenario from a config file, write trajectory CSV
  sweep        run the pump-ratio sweep, write sweep CSV
  validate     parse and resolve a config, print the resolved form
  calibrate-g  find the coupling g that puts the unseeded pulse half-rise at
               a target time (onset-matching helper)
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys

from . import __version__
from .config import ConfigError, RunConfig, parse_config, serialize_config
from .csvio import write_trajectory_csv, write_sweep_csv
from .integrator import IntegrationError
from .scenarios import (run_relaxation, run_seeded_protocol, run_epsilon_sweep,
                        detect_pulse)
from .schedule import constant_schedule
from .integrator import run_schedule


def _load_config(args) -> RunConfig:
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}")
    else:
        text = "[run]\nscenario = relaxation\n"
    cfg = parse_config(text)
    if args.seed is not None:
        cfg = cfg.replace(rng_seed=args.seed,
                          init=dataclasses.replace(cfg.init,
                                                   rng_seed=args.seed))
    return cfg


def _run(cfg: RunConfig, args) -> int:
    if cfg.scenario in ("relaxation", "custom"):
        result = run_relaxation(cfg)
    elif cfg.scenario == "seeded":
        result = run_seeded_protocol(cfg)
    else:
        raise ConfigError("use the 'sweep' verb for scenario = sweep",
                          "scenario")
    path = os.path.join(args.out, f"{cfg.scenario}_trajectory.csv")
    write_trajectory_csv(result.trajectory, path, metadata=result.metadata)
    if not args.quiet:
        print(f"wrote {path}")
        if result.pulse:
            p = result.pulse
            print(f"pulse: peak {p.peak_photons:.4g} photons at "
                  f"{p.t_peak * 1e3:.3f} ms (half-rise {p.t_half_rise * 1e3:.3f} ms)")
        if result.steady:
            s = result.steady
            print(f"steady from {s.t_detect * 1e3:.3f} ms, residual "
                  f"{s.residual_photons:.4g} photons")
    return 0


def _sweep(cfg: RunConfig, args) -> int:
    sweep = run_epsilon_sweep(cfg)
    path = os.path.join(args.out, "sweep.csv")
    write_sweep_csv(sweep, path)
    if not args.quiet:
        print(f"wrote {path} ({len(sweep.rows)} rows x "
              f"{sweep.rows[0].n_replicas} replicas)")
    return 0


def _validate(cfg: RunConfig, args) -> int:
    if not args.quiet:
        print(serialize_config(cfg), end="")
    return 0


def _onset(cfg: RunConfig, g: float) -> float | None:
    params = dataclasses.replace(cfg.params, g=g)
    sch = constant_schedule(cfg.eps, 0.0, cfg.t_end, cfg.init)
    traj = run_schedule(sch, params, cfg.ctrl, cfg.t_end)
    pulse = detect_pulse(traj)
    return None if pulse is None else pulse.t_half_rise


def _calibrate_g(cfg: RunConfig, args) -> int:
    """Bisect g so the unseeded pulse half-rise hits the target time.

    Half-rise time decreases monotonically with g over the bracket.
    """
    target = args.target
    lo, hi = args.g_min, args.g_max
    t_lo, t_hi = _onset(cfg, lo), _onset(cfg, hi)
    if t_hi is None or t_hi > target:
        print(f"error: even g = {hi} pulses later than {target:g} s",
              file=sys.stderr)
        return 2
    if t_lo is not None and t_lo < target:
        print(f"error: even g = {lo} pulses earlier than {target:g} s",
              file=sys.stderr)
        return 2
    for _ in range(20):
        mid = 0.5 * (lo + hi)
        t_mid = _onset(cfg, mid)
        if t_mid is None or t_mid > target:
            lo = mid
        else:
            hi = mid
        if hi - lo < args.g_tol:
            break
    g = 0.5 * (lo + hi)
    t_g = _onset(cfg, g)
    if args.quiet:
        print(f"{g:.6g}")
    else:
        print(f"g = {g:.6g} rad/s gives half-rise {t_g * 1e3:.3f} ms "
              f"(target {target * 1e3:.3f} ms, eps = {cfg.eps}, "
              f"noise_amp = {cfg.init.noise_amp})")
    return 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="becring",
        description="Mean-field simulator of BEC momentum states coupled to "
                    "a recoil-resolving ring cavity.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="verb", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="config file")
    common.add_argument("--out", metavar="DIR", default=".",
                        help="output directory (default: .)")
    common.add_argument("--seed", type=int, metavar="INT",
                        help="override the RNG seed")
    common.add_argument("--quiet", action="store_true")
    sub.add_parser("run", parents=[common], help="simulate one scenario")
    sub.add_parser("sweep", parents=[common], help="pump-ratio sweep")
    sub.add_parser("validate", parents=[common],
                   help="parse a config and print the resolved form")
    cal = sub.add_parser("calibrate-g", parents=[common],
                         help="match the unseeded pulse onset")
    cal.add_argument("--target", type=float, default=0.5e-3, metavar="SECONDS",
                     help="target half-rise time (default 0.5e-3)")
    cal.add_argument("--g-min", type=float, default=5.0)
    cal.add_argument("--g-max", type=float, default=120.0)
    cal.add_argument("--g-tol", type=float, default=0.05)
    args = ap.parse_args(argv)

    try:
        cfg = _load_config(args)
        handler = {"run": _run, "sweep": _sweep, "validate": _validate,
                   "calibrate-g": _calibrate_g}[args.verb]
        return handler(cfg, args)
    except (ConfigError, IntegrationError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
