"""The three experimental protocols and their derived observables.

 - relaxation: noise-triggered decay at fixed pump ratio (superradiant pulse,
   then a stationary subradiant state),
 - seeded: two seed pulses with the pump ratio switched off in between,
 - sweep: seeded runs over a list of pump ratios, aggregated over replicas.

Pulse and steadiness detection work on sampled trajectories only; the
adiabatic (cavity-eliminated) field provides the rate-equation diagnostic.
"""

from __future__ import annotations

import dataclasses
import math
import os
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .config import RunConfig, serialize_config
from .integrator import StepControl, Trajectory, run_schedule
from .model import ModeAmplitudes, ModelParams, alpha, structure_factor
from .schedule import InitialStateSpec, Schedule, Segment, constant_schedule

WORKERS_ENV = "BECRING_WORKERS"


@dataclasses.dataclass(frozen=True)
class Pulse:
    t_peak: float
    peak_photons: float
    t_half_rise: float


@dataclasses.dataclass(frozen=True)
class Steady:
    t_detect: float
    populations: np.ndarray   # window-averaged
    residual_photons: float   # window-averaged |a|^2


@dataclasses.dataclass(frozen=True)
class ScenarioResult:
    trajectory: Trajectory
    pulse: Pulse | None
    steady: Steady | None
    metadata: str             # resolved config text


@dataclasses.dataclass(frozen=True)
class SweepRow:
    eps: float
    n_min: int                # mode number of pops_mean[0]
    pops_mean: np.ndarray     # full window, at t_hold
    residual_photons: float
    n_replicas: int
    pops_std: np.ndarray


@dataclasses.dataclass(frozen=True)
class SweepResult:
    rows: tuple
    metadata: str

    def __post_init__(self):
        es = [r.eps for r in self.rows]
        if not all(a < b for a, b in zip(es, es[1:])):
            raise ValueError("sweep rows must have strictly increasing eps")


def detect_pulse(traj: Trajectory, mask_windows=()) -> Pulse | None:
    """Global photon-number maximum with seed windows masked out.

    mask_windows: (t_start, t_end) intervals to exclude (seed pulses).
    Returns None when the unmasked field is identically zero ("no pulse").
    """
    ph = traj.photons.copy()
    for t0, t1 in mask_windows:
        ph[(traj.t >= t0) & (traj.t <= t1)] = 0.0
    i_peak = int(np.argmax(ph))
    peak = ph[i_peak]
    if peak == 0.0:
        return None
    above = np.nonzero(ph >= 0.5 * peak)[0]
    return Pulse(t_peak=traj.t[i_peak], peak_photons=peak,
                 t_half_rise=traj.t[above[0]])


def detect_steady(traj: Trajectory, window: float, pop_tol: float,
                  field_tol: float) -> Steady | None:
    """Earliest t such that over [t, t + window] every population varies by
    less than pop_tol and |a|^2 stays below field_tol. Returns the
    window-averaged populations and photon number; None if never satisfied.
    """
    t = traj.t
    if window >= t[-1] - t[0]:
        raise ValueError("window must be shorter than the trajectory span")
    ph = traj.photons
    ends = np.searchsorted(t, t + window, side="right")
    t_last = t[-1] * (1 + 1e-12) + 1e-300
    for i in range(len(t)):
        if t[i] + window > t_last:
            break
        j = ends[i]
        seg = traj.pops[i:j]
        if (seg.max(axis=0) - seg.min(axis=0)).max() < pop_tol \
                and ph[i:j].max() < field_tol:
            return Steady(t_detect=t[i], populations=seg.mean(axis=0),
                          residual_photons=ph[i:j].mean())
    return None


def adiabatic_field(modes: ModeAmplitudes, eps: float, t: float,
                    params: ModelParams, N_t: float, eta: float = 0.0) -> complex:
    """Quasi-static cavity field from da/dt = 0: (g N α S + η) / κ."""
    S = structure_factor(modes)
    return (params.g * N_t * alpha(t, eps, params.Delta) * S + eta) / params.kappa


def _field_tol(cfg: RunConfig, pulse: Pulse | None) -> float:
    if pulse is None:
        return math.inf
    return cfg.steady_field_frac * pulse.peak_photons


def calibrate_eta(cfg: RunConfig, eps: float) -> float:
    """Seed amplitude giving a quasi-steady photon number (eta/kappa)^2 equal
    to 5x the unseeded pulse peak at this pump ratio."""
    init = InitialStateSpec(kind="noise", noise_amp=cfg.init.noise_amp,
                            rng_seed=cfg.rng_seed)
    sch = constant_schedule(eps, 0.0, cfg.t_end, init)
    traj = run_schedule(sch, cfg.params, cfg.ctrl, cfg.t_end)
    pulse = detect_pulse(traj)
    if pulse is None:
        raise ValueError("calibration run produced no pulse; set eta explicitly")
    return cfg.params.kappa * math.sqrt(5.0 * pulse.peak_photons)


def run_relaxation(cfg: RunConfig) -> ScenarioResult:
    """Unseeded decay at fixed eps from a noise-triggered initial state."""
    sch = constant_schedule(cfg.eps, 0.0, cfg.t_end, cfg.init)
    traj = run_schedule(sch, cfg.params, cfg.ctrl, cfg.t_end)
    pulse = detect_pulse(traj)
    steady = detect_steady(traj, cfg.steady_window, cfg.steady_pop_tol,
                           _field_tol(cfg, pulse))
    return ScenarioResult(traj, pulse, steady, serialize_config(cfg))


def seeded_schedule(cfg: RunConfig, eta: float, single_pulse=False) -> Schedule:
    """Seed at t = 0 for seed_duration; unless single_pulse, also switch eps
    to 0 at 0.6 ms and seed again for seed_duration (the two-pulse sequence)."""
    d = cfg.seed_duration
    t_end = cfg.t_end
    if single_pulse:
        init = cfg.init
        eps_segs = (Segment(0.0, t_end, cfg.eps),)
        eta_segs = (Segment(0.0, d, eta), Segment(d, t_end, 0.0))
    else:
        init = InitialStateSpec(kind="pure", rng_seed=cfg.rng_seed)
        t_sw = 0.6e-3
        if t_end <= t_sw + d:
            raise ValueError("t_end too short for the two-pulse sequence")
        eps_segs = (Segment(0.0, t_sw, cfg.eps), Segment(t_sw, t_end, 0.0))
        eta_segs = (Segment(0.0, d, eta), Segment(d, t_sw, 0.0),
                    Segment(t_sw, t_sw + d, eta), Segment(t_sw + d, t_end, 0.0))
    return Schedule(eps_segments=eps_segs, eta_segments=eta_segs, init=init)


def seed_windows(sch: Schedule):
    return tuple((s.t_start, s.t_end) for s in sch.eta_segments if s.value > 0)


def run_seeded_protocol(cfg: RunConfig) -> ScenarioResult:
    """Two-seed sequence from a pure initial state: seed at t = 0 with the
    configured eps, switch eps to 0 at 0.6 ms and seed again."""
    eta = cfg.seed_eta if cfg.seed_eta is not None else calibrate_eta(cfg, cfg.eps)
    sch = seeded_schedule(cfg, eta)
    traj = run_schedule(sch, cfg.params, cfg.ctrl, cfg.t_end)
    pulse = detect_pulse(traj, mask_windows=seed_windows(sch))
    steady = detect_steady(traj, cfg.steady_window, cfg.steady_pop_tol,
                           _field_tol(cfg, pulse))
    return ScenarioResult(traj, pulse, steady, serialize_config(cfg))


def _residual_photons(traj: Trajectory, params: ModelParams) -> float:
    """|a|^2 at the end, averaged over one pump-beat period 2*pi/Delta."""
    period = 2.0 * math.pi / params.Delta
    sel = traj.t >= traj.t[-1] - period
    return float(traj.photons[sel].mean())


def _sweep_point(cfg: RunConfig, eps: float, seeds):
    """One sweep eps: calibrate eta, run every replica, return stacked pops."""
    c = cfg.replace(eps=eps, t_end=cfg.sweep_t_hold)
    eta = c.seed_eta if c.seed_eta is not None else calibrate_eta(c, eps)
    pops = []
    resid = []
    for s in seeds:
        init = InitialStateSpec(kind="noise", noise_amp=cfg.init.noise_amp,
                                rng_seed=int(s))
        sch = seeded_schedule(c.replace(init=init), eta, single_pulse=True)
        traj = run_schedule(sch, c.params, c.ctrl, c.t_end)
        pops.append(traj.pops[-1])
        resid.append(_residual_photons(traj, c.params))
    pops = np.array(pops)
    return SweepRow(eps=eps, n_min=c.params.n_min, pops_mean=pops.mean(axis=0),
                    residual_photons=float(np.mean(resid)),
                    n_replicas=len(seeds),
                    pops_std=pops.std(axis=0, ddof=1) if len(seeds) > 1
                    else np.zeros(pops.shape[1]))


def run_epsilon_sweep(cfg: RunConfig, eps_list=None, t_hold=None,
                      replicas=None) -> SweepResult:
    """Seeded run per (eps, replica); rows aggregate replica mean and spread.

    Points run in a process pool (worker count from BECRING_WORKERS, default
    cpu count); results are merged in eps order regardless of completion
    order, so output is deterministic.
    """
    eps_list = tuple(cfg.sweep_eps if eps_list is None else eps_list)
    if any(not 0.0 <= e <= 3.0 for e in eps_list):
        raise ValueError("sweep eps values must lie in [0, 3]")
    t_hold = cfg.sweep_t_hold if t_hold is None else t_hold
    if t_hold <= 0:
        raise ValueError("t_hold must be > 0")
    replicas = cfg.sweep_replicas if replicas is None else replicas
    cfg = cfg.replace(sweep_eps=eps_list, sweep_t_hold=t_hold,
                      sweep_replicas=replicas)
    seeds = np.random.SeedSequence(cfg.rng_seed).generate_state(replicas)

    workers = int(os.environ.get(WORKERS_ENV, 0)) or os.cpu_count() or 1
    workers = min(workers, len(eps_list))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_sweep_point, [cfg] * len(eps_list), eps_list,
                                 [seeds] * len(eps_list)))
    else:
        rows = [_sweep_point(cfg, e, seeds) for e in eps_list]
    return SweepResult(rows=tuple(rows), metadata=serialize_config(cfg))
