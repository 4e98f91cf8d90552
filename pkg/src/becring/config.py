"""Run configuration: a small flat-section key=value format.

Sections group related knobs ([run], [model], [init], [seed], [steady],
[step], [sweep]); every key has a default, unknown keys are rejected, and
errors carry the offending key and line number. The resolved configuration
serializes back to the same format and round-trips exactly.
"""

from __future__ import annotations

import dataclasses
import math

from .integrator import StepControl
from .model import ModelParams
from .schedule import InitialStateSpec

TWO_PI = 2.0 * math.pi

# Calibrated defaults for the relaxation onset (see README): together,
# g = 26 rad/s and noise_amp = 0.06 put the unseeded eps = 0.6 pulse
# half-rise near 0.5 ms.
DEFAULT_G = 26.0
DEFAULT_NOISE_AMP = 0.06

SCENARIOS = ("relaxation", "seeded", "sweep", "custom")

# (section, key) -> (default string, parser tag)
_SCHEMA = {
    ("run", "scenario"): (None, "scenario"),
    ("run", "eps"): ("0.6", "nonneg"),
    ("run", "t_end"): ("3.0e-3", "positive"),
    ("run", "rng_seed"): ("0", "int"),
    ("model", "omega_r"): (repr(TWO_PI * 13.6e3), "positive"),
    ("model", "delta"): ("auto", "auto_float"),    # auto -> omega_r
    ("model", "Delta"): ("auto", "auto_float"),    # auto -> 2 * omega_r
    ("model", "g"): (repr(DEFAULT_G), "float"),
    ("model", "N0"): ("250000", "positive"),
    ("model", "kappa"): (repr(TWO_PI * 5.0e3), "positive"),
    ("model", "tau_loss"): ("1.0e-3", "positive_or_inf"),
    ("model", "n_min"): ("-5", "int"),
    ("model", "n_max"): ("5", "int"),
    ("init", "kind"): ("noise", "kind"),
    ("init", "noise_amp"): (repr(DEFAULT_NOISE_AMP), "nonneg"),
    ("seed", "eta"): ("auto", "auto_float"),       # auto -> 5x-pulse calibration
    ("seed", "duration"): ("1.0e-4", "positive"),
    ("steady", "window"): ("3.0e-4", "positive"),
    ("steady", "pop_tol"): ("0.02", "positive"),
    ("steady", "field_tol_frac"): ("0.01", "positive"),
    ("step", "mode"): ("adaptive", "step_mode"),
    ("step", "dt"): ("3.7e-7", "positive"),
    ("step", "rel_tol"): ("1.0e-10", "positive"),
    ("step", "abs_tol"): ("1.0e-12", "positive"),
    ("step", "sample_every"): ("2.0e-6", "positive"),
    ("sweep", "eps_start"): ("0.0", "nonneg"),
    ("sweep", "eps_stop"): ("2.1", "nonneg"),
    ("sweep", "eps_step"): ("0.1", "positive"),
    ("sweep", "eps_list"): ("auto", "auto_list"),  # overrides the range spec
    ("sweep", "t_hold"): ("1.5e-3", "positive"),
    ("sweep", "replicas"): ("10", "posint"),
}

_SECTION_ORDER = ("run", "model", "init", "seed", "steady", "step", "sweep")


class ConfigError(ValueError):
    """Config parse/validation failure, annotated with key and line."""

    def __init__(self, message, key=None, line=None):
        loc = ""
        if key is not None:
            loc = f" (key {key!r}" + (f", line {line}" if line else "") + ")"
        super().__init__(message + loc)
        self.key = key
        self.line = line


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """Fully resolved run description."""

    scenario: str
    eps: float
    t_end: float
    rng_seed: int
    params: ModelParams
    init: InitialStateSpec
    seed_eta: float | None      # None: calibrate from an unseeded run
    seed_duration: float
    steady_window: float
    steady_pop_tol: float
    steady_field_frac: float
    ctrl: StepControl
    sweep_eps: tuple
    sweep_t_hold: float
    sweep_replicas: int

    def replace(self, **kw) -> "RunConfig":
        return dataclasses.replace(self, **kw)


def _parse_lines(text):
    """-> {(section, key): (value string, line number)}; rejects unknowns."""
    values = {}
    section = None
    known_sections = {s for s, _ in _SCHEMA}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            if section not in known_sections:
                raise ConfigError(f"unknown section [{section}]", section, lineno)
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}",
                              line=lineno)
        if section is None:
            raise ConfigError("key outside any [section]", line=lineno)
        key, _, val = line.partition("=")
        key, val = key.strip(), val.strip()
        if (section, key) not in _SCHEMA:
            raise ConfigError(f"unknown key in [{section}]", key, lineno)
        if (section, key) in values:
            raise ConfigError(f"duplicate key in [{section}]", key, lineno)
        values[(section, key)] = (val, lineno)
    return values


def _convert(tag, val, key, line):
    def err(msg):
        raise ConfigError(msg, key, line)

    try:
        if tag == "int":
            return int(val)
        if tag == "posint":
            v = int(val)
            if v <= 0:
                err(f"{key} must be > 0 (got {v})")
            return v
        if tag in ("float", "nonneg", "positive"):
            v = float(val)
            if not math.isfinite(v):
                err(f"{key} must be finite")
            if tag == "nonneg" and v < 0:
                err(f"{key} must be >= 0 (got {v})")
            if tag == "positive" and v <= 0:
                err(f"{key} must be > 0 (got {v})")
            return v
        if tag == "positive_or_inf":
            v = float(val)
            if v <= 0:
                err(f"{key} must be > 0 or inf (got {v})")
            return v
        if tag == "auto_float":
            if val == "auto":
                return None
            v = float(val)
            if v < 0 or not math.isfinite(v):
                err(f"{key} must be >= 0 or 'auto' (got {val})")
            return v
        if tag == "auto_list":
            if val == "auto":
                return None
            out = tuple(float(x) for x in val.split(","))
            if not out:
                err(f"{key} must be a comma-separated list or 'auto'")
            return out
        if tag == "scenario":
            if val not in SCENARIOS:
                err(f"scenario must be one of {', '.join(SCENARIOS)} (got {val!r})")
            return val
        if tag == "kind":
            if val not in ("pure", "noise"):
                err(f"kind must be 'pure' or 'noise' (got {val!r})")
            return val
        if tag == "step_mode":
            if val not in ("fixed", "adaptive"):
                err(f"mode must be 'fixed' or 'adaptive' (got {val!r})")
            return val
    except ConfigError:
        raise
    except ValueError:
        err(f"cannot parse {key} = {val!r}")
    raise AssertionError(f"unhandled tag {tag}")


def parse_config(text: str) -> RunConfig:
    """Parse config text, fill defaults, validate, and resolve."""
    found = _parse_lines(text)
    resolved = {}
    lines = {}
    for (section, key), (default, tag) in _SCHEMA.items():
        if (section, key) in found:
            val, lineno = found[(section, key)]
        else:
            val, lineno = default, None
        if val is None:
            raise ConfigError(f"missing required key [{section}] {key}", key)
        resolved[(section, key)] = _convert(tag, val, key, lineno)
        lines[(section, key)] = lineno

    r = resolved
    omega_r = r[("model", "omega_r")]
    delta = omega_r if r[("model", "delta")] is None else r[("model", "delta")]
    Delta = 2 * omega_r if r[("model", "Delta")] is None else r[("model", "Delta")]
    try:
        params = ModelParams(
            omega_r=omega_r, delta=delta, Delta=Delta,
            g=r[("model", "g")], N0=r[("model", "N0")],
            kappa=r[("model", "kappa")], tau_loss=r[("model", "tau_loss")],
            n_min=r[("model", "n_min")], n_max=r[("model", "n_max")])
        init = InitialStateSpec(kind=r[("init", "kind")],
                                noise_amp=r[("init", "noise_amp")],
                                rng_seed=r[("run", "rng_seed")])
        ctrl = StepControl(dt=r[("step", "dt")], mode=r[("step", "mode")],
                           rel_tol=r[("step", "rel_tol")],
                           abs_tol=r[("step", "abs_tol")],
                           sample_every=r[("step", "sample_every")])
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    if r[("sweep", "eps_list")] is not None:
        sweep_eps = r[("sweep", "eps_list")]
    else:
        start, stop, step = (r[("sweep", "eps_start")], r[("sweep", "eps_stop")],
                             r[("sweep", "eps_step")])
        n = int(round((stop - start) / step))
        sweep_eps = tuple(round(start + i * step, 12) for i in range(n + 1))
    for e in sweep_eps + (r[("run", "eps")],):
        if not 0.0 <= e <= 3.0:
            raise ConfigError(f"eps values must lie in [0, 3] (got {e})", "eps")
    if not all(a < b for a, b in zip(sweep_eps, sweep_eps[1:])):
        raise ConfigError("sweep eps values must be strictly increasing",
                          "eps_list", lines[("sweep", "eps_list")])
    if r[("steady", "window")] >= r[("run", "t_end")]:
        raise ConfigError("steady window must be shorter than t_end", "window",
                          lines[("steady", "window")])

    return RunConfig(
        scenario=r[("run", "scenario")],
        eps=r[("run", "eps")],
        t_end=r[("run", "t_end")],
        rng_seed=r[("run", "rng_seed")],
        params=params, init=init,
        seed_eta=r[("seed", "eta")],
        seed_duration=r[("seed", "duration")],
        steady_window=r[("steady", "window")],
        steady_pop_tol=r[("steady", "pop_tol")],
        steady_field_frac=r[("steady", "field_tol_frac")],
        ctrl=ctrl,
        sweep_eps=sweep_eps,
        sweep_t_hold=r[("sweep", "t_hold")],
        sweep_replicas=r[("sweep", "replicas")],
    )


def _fmt(v):
    if isinstance(v, float):
        return repr(v)
    return str(v)


def serialize_config(cfg: RunConfig) -> str:
    """Canonical text form of a resolved config; parse() round-trips it."""
    p, c = cfg.params, cfg.ctrl
    vals = {
        ("run", "scenario"): cfg.scenario,
        ("run", "eps"): cfg.eps,
        ("run", "t_end"): cfg.t_end,
        ("run", "rng_seed"): cfg.rng_seed,
        ("model", "omega_r"): p.omega_r,
        ("model", "delta"): p.delta,
        ("model", "Delta"): p.Delta,
        ("model", "g"): p.g,
        ("model", "N0"): p.N0,
        ("model", "kappa"): p.kappa,
        ("model", "tau_loss"): p.tau_loss,
        ("model", "n_min"): p.n_min,
        ("model", "n_max"): p.n_max,
        ("init", "kind"): cfg.init.kind,
        ("init", "noise_amp"): cfg.init.noise_amp,
        ("seed", "eta"): "auto" if cfg.seed_eta is None else cfg.seed_eta,
        ("seed", "duration"): cfg.seed_duration,
        ("steady", "window"): cfg.steady_window,
        ("steady", "pop_tol"): cfg.steady_pop_tol,
        ("steady", "field_tol_frac"): cfg.steady_field_frac,
        ("step", "mode"): c.mode,
        ("step", "dt"): c.dt,
        ("step", "rel_tol"): c.rel_tol,
        ("step", "abs_tol"): c.abs_tol,
        ("step", "sample_every"): c.sample_every,
        ("sweep", "eps_list"): ",".join(_fmt(e) for e in cfg.sweep_eps),
        ("sweep", "t_hold"): cfg.sweep_t_hold,
        ("sweep", "replicas"): cfg.sweep_replicas,
    }
    out = []
    for section in _SECTION_ORDER:
        out.append(f"[{section}]")
        for (s, key), _ in _SCHEMA.items():
            if s == section and (s, key) in vals:
                out.append(f"{key} = {_fmt(vals[(s, key)])}")
        out.append("")
    return "\n".join(out)
