"""Explicit Runge-Kutta time stepping over the mean-field equations.

Fixed-step classic RK4 and an embedded Dormand-Prince 5(4) adaptive mode.
Steps never straddle a control breakpoint: integration proceeds segment by
segment and lands exactly on every sample time and discontinuity. The pump
phase factor e^{i Delta t} is evaluated at the substep times, never frozen
across a step.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from .model import ModelParams, ModeAmplitudes, CavityField, SystemState, \
    omega_n_vector
from .schedule import Schedule, controls_at, atom_number, initial_state


class IntegrationError(RuntimeError):
    """Raised when the state stops being finite (overflow / NaN)."""

    def __init__(self, t, message="non-finite state"):
        super().__init__(f"{message} at t = {t:g} s")
        self.t = t


@dataclasses.dataclass(frozen=True)
class StepControl:
    dt: float = 3.7e-7          # base step, s
    mode: str = "adaptive"      # "fixed" | "adaptive"
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    sample_every: float = 2e-6  # output cadence, s

    def __post_init__(self):
        if self.dt <= 0:
            raise ValueError("dt must be > 0")
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ValueError("tolerances must be > 0")
        if self.sample_every < self.dt:
            raise ValueError("sample_every must be >= dt")
        if self.mode not in ("fixed", "adaptive"):
            raise ValueError(f"unknown step mode {self.mode!r}")


@dataclasses.dataclass
class Trajectory:
    """Sampled time series of an integration run.

    Arrays are row-per-sample; `amps` keeps the raw complex mode amplitudes
    for diagnostics (not serialized to CSV).
    """

    n_min: int
    n_max: int
    t: np.ndarray          # (n,)
    pops: np.ndarray       # (n, modes)
    a: np.ndarray          # (n,) complex
    N: np.ndarray          # (n,)
    eps: np.ndarray        # (n,)
    eta: np.ndarray        # (n,)
    amps: np.ndarray       # (n, modes) complex

    @property
    def photons(self) -> np.ndarray:
        return np.abs(self.a) ** 2

    @property
    def mode_numbers(self) -> np.ndarray:
        return np.arange(self.n_min, self.n_max + 1)

    def pop(self, n: int) -> np.ndarray:
        return self.pops[:, n - self.n_min]


def _rhs_flat(t, y, params, eps, eta, N0, tau_loss, omega_vec, kappa, g, Delta):
    # y = [c_0..c_{m-1}, a]; inlined model RHS for speed
    c = y[:-1]
    a = y[-1]
    al = 1.0 + eps * np.exp(1j * Delta * t)
    dy = np.empty_like(y)
    dc = dy[:-1]
    np.multiply(1j * omega_vec, c, out=dc)
    dc[1:] += (g * al * np.conj(a)) * c[:-1]
    dc[:-1] -= (g * np.conj(al) * a) * c[1:]
    S = np.sum(c[:-1] * np.conj(c[1:]))
    N_t = N0 if math.isinf(tau_loss) else N0 * math.exp(-t / tau_loss)
    dy[-1] = g * N_t * al * S - kappa * a + eta
    return dy


def _rk4_step(f, t, y, h):
    k1 = f(t, y)
    k2 = f(t + 0.5 * h, y + 0.5 * h * k1)
    k3 = f(t + 0.5 * h, y + 0.5 * h * k2)
    k4 = f(t + h, y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


# Dormand-Prince 5(4) tableau
_DP_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_DP_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_DP_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_DP_B4 = (5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200,
          187 / 2100, 1 / 40)


def _dp45_step(f, t, y, h, k1=None):
    """One Dormand-Prince step. Returns (y5, err_vec, k_last) with FSAL k."""
    ks = [k1 if k1 is not None else f(t, y)]
    for i in range(1, 7):
        yi = y + h * sum(a * k for a, k in zip(_DP_A[i], ks))
        ks.append(f(t + _DP_C[i] * h, yi))
    y5 = y + h * sum(b * k for b, k in zip(_DP_B5, ks))
    y4 = y + h * sum(b * k for b, k in zip(_DP_B4, ks))
    return y5, y5 - y4, ks[-1]


def step(state: SystemState, eps: float, eta: float, N_t: float,
         params: ModelParams, dt: float) -> SystemState:
    """Single fixed RK4 step with frozen controls (but live alpha(t))."""
    if dt <= 0:
        raise ValueError("dt must be > 0")
    omega_vec = omega_n_vector(params)
    # constant N over the step, as frozen by the caller
    f = lambda t, y: _rhs_flat(t, y, params, eps, eta, N_t, math.inf,
                               omega_vec, params.kappa, params.g, params.Delta)
    y = np.concatenate([state.modes.amps, [state.field.a]])
    y = _rk4_step(f, state.t, y, dt)
    return SystemState(
        modes=ModeAmplitudes(params.n_min, params.n_max, y[:-1]),
        field=CavityField(complex(y[-1])),
        t=state.t + dt,
    )


def _error_norm(err, y_new, y_old, rel_tol, abs_tol):
    scale = abs_tol + rel_tol * np.maximum(np.abs(y_old), np.abs(y_new))
    return float(np.sqrt(np.mean(np.abs(err / scale) ** 2)))


def integrate(initial_modes: ModeAmplitudes, schedule: Schedule,
              params: ModelParams, ctrl: StepControl, t_end: float,
              a0: complex = 0.0) -> Trajectory:
    """Advance the state to t_end and sample the observables.

    Samples are emitted at every multiple of ctrl.sample_every in [0, t_end]
    and at every schedule breakpoint, deduplicated, strictly increasing.
    """
    if t_end <= 0:
        raise ValueError("t_end must be > 0")
    if schedule.t_end < t_end:
        raise ValueError("schedule does not cover [0, t_end]")

    omega_vec = omega_n_vector(params)
    targets = _sample_times(schedule, ctrl.sample_every, t_end)
    breaks = set(b for b in schedule.breakpoints() if b < t_end)

    y = np.concatenate([initial_modes.amps, [a0]]).astype(complex)
    t = 0.0
    rows_t, rows_y, rows_eps, rows_eta = [t], [y.copy()], [], []
    e0, h0 = controls_at(schedule, 0.0)
    rows_eps.append(e0)
    rows_eta.append(h0)

    h = ctrl.dt
    fsal = None
    # overflow in a diverging trial step only trips the finiteness check
    with np.errstate(over="ignore", invalid="ignore"):
        for target in targets[1:]:
            eps, eta = controls_at(schedule, t)  # right-continuous at breakpoints
            f = lambda tt, yy: _rhs_flat(
                tt, yy, params, eps, eta, params.N0, params.tau_loss,
                omega_vec, params.kappa, params.g, params.Delta)
            if fsal is None and ctrl.mode == "adaptive":
                fsal = f(t, y)
            while t < target - 1e-18:
                h_try = min(h, target - t)
                if ctrl.mode == "fixed":
                    y = _rk4_step(f, t, y, h_try)
                    t = min(t + h_try, target)
                else:
                    y_new, err, k_last = _dp45_step(f, t, y, h_try, fsal)
                    enorm = _error_norm(err, y_new, y, ctrl.rel_tol, ctrl.abs_tol)
                    if enorm <= 1.0:
                        t = min(t + h_try, target)
                        y = y_new
                        fsal = k_last
                    # PI-free controller: plain safety-factor resize
                    factor = 0.9 * (1.0 / max(enorm, 1e-16)) ** 0.2
                    h = h_try * min(5.0, max(0.2, factor))
                if not np.all(np.isfinite(y.view(float))):
                    raise IntegrationError(t)
            t = target
            if t in breaks:
                fsal = None  # controls change; stale FSAL derivative is invalid
            rows_t.append(t)
            rows_y.append(y.copy())
            e, n = controls_at(schedule, t)
            rows_eps.append(e)
            rows_eta.append(n)

    ys = np.array(rows_y)
    ts = np.array(rows_t)
    return Trajectory(
        n_min=params.n_min,
        n_max=params.n_max,
        t=ts,
        pops=np.abs(ys[:, :-1]) ** 2,
        a=ys[:, -1],
        N=np.array([atom_number(params, tt) for tt in ts]),
        eps=np.array(rows_eps),
        eta=np.array(rows_eta),
        amps=ys[:, :-1],
    )


def _sample_times(schedule, sample_every, t_end):
    n = int(math.floor(t_end / sample_every + 1e-9))
    times = [k * sample_every for k in range(n + 1)]
    # breakpoints replace (not duplicate) coinciding grid times so that
    # controls_at sees the exact discontinuity time
    for b in schedule.breakpoints():
        if not 0.0 < b <= t_end:
            continue
        for i, x in enumerate(times):
            if math.isclose(x, b, rel_tol=1e-9):
                times[i] = b
                break
        else:
            times.append(b)
    times.sort()
    return times


def run_schedule(schedule: Schedule, params: ModelParams, ctrl: StepControl,
                 t_end: float) -> Trajectory:
    """Build the initial state from the schedule's recipe and integrate."""
    modes = initial_state(schedule.init, params.n_min, params.n_max)
    return integrate(modes, schedule, params, ctrl, t_end)
