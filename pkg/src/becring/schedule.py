"""Time-dependent experimental controls: pump-ratio and seed-pulse segments,
atom-number decay, and the initial condensate state."""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from .model import ModeAmplitudes, ModelParams


@dataclasses.dataclass(frozen=True)
class InitialStateSpec:
    """Recipe for the starting mode amplitudes.

    kind = "pure": everything in n = 0.
    kind = "noise": additionally put noise_amp * e^{i phi} into n = 1 with a
    random phase, then renormalize. The default amplitude 1/sqrt(2*N0)
    mimics a half-quantum vacuum fluctuation in the first side mode.
    """

    kind: str = "noise"
    noise_amp: float = 1.0 / math.sqrt(2.0 * 250000)  # half quantum at N0 = 2.5e5
    rng_seed: int = 0

    def __post_init__(self):
        if self.kind not in ("pure", "noise"):
            raise ValueError(f"unknown initial state kind {self.kind!r}")
        if self.noise_amp < 0:
            raise ValueError("noise_amp must be >= 0")


@dataclasses.dataclass(frozen=True)
class Segment:
    t_start: float
    t_end: float
    value: float


@dataclasses.dataclass(frozen=True)
class Schedule:
    """Piecewise-constant controls eps(t) and eta(t) on [0, t_end].

    Values are right-continuous at breakpoints: the segment starting at a
    breakpoint owns it.
    """

    eps_segments: tuple
    eta_segments: tuple
    init: InitialStateSpec

    def __post_init__(self):
        for name, segs in (("eps", self.eps_segments), ("eta", self.eta_segments)):
            _validate_segments(name, segs)
            for s in segs:
                if s.value < 0:
                    raise ValueError(f"{name} must be >= 0 (got {s.value})")
        if not math.isclose(self.t_end, self.eta_segments[-1].t_end):
            raise ValueError("eps and eta segments must cover the same span")

    @property
    def t_end(self) -> float:
        return self.eps_segments[-1].t_end

    def breakpoints(self):
        """All interior control discontinuities, sorted, deduplicated."""
        pts = set()
        for segs in (self.eps_segments, self.eta_segments):
            for s in segs:
                pts.add(s.t_start)
        pts.discard(0.0)
        return sorted(pts)


def _validate_segments(name, segs):
    if not segs:
        raise ValueError(f"{name} schedule is empty")
    if segs[0].t_start != 0.0:
        raise ValueError(f"{name} schedule must start at t = 0")
    for a, b in zip(segs, segs[1:]):
        if not math.isclose(a.t_end, b.t_start):
            raise ValueError(
                f"{name} schedule has a gap or overlap at t = {a.t_end:g}"
            )
    for s in segs:
        if s.t_end <= s.t_start:
            raise ValueError(f"{name} segment [{s.t_start:g}, {s.t_end:g}] is empty")


def constant_schedule(eps, eta, t_end, init) -> Schedule:
    return Schedule(
        eps_segments=(Segment(0.0, t_end, eps),),
        eta_segments=(Segment(0.0, t_end, eta),),
        init=init,
    )


def controls_at(schedule: Schedule, t: float) -> tuple[float, float]:
    """(eps, eta) at time t; right-continuous at breakpoints."""
    return (_segment_value(schedule.eps_segments, t),
            _segment_value(schedule.eta_segments, t))


def _segment_value(segs, t):
    if t < segs[0].t_start or t > segs[-1].t_end:
        raise ValueError(f"t = {t:g} outside schedule coverage")
    for s in segs:
        if s.t_start <= t < s.t_end:
            return s.value
    return segs[-1].value  # t == t_end: close the last segment


def atom_number(params: ModelParams, t: float) -> float:
    """N(t) = N0 * exp(-t / tau_loss); plain N0 when loss is disabled."""
    if math.isinf(params.tau_loss):
        return params.N0
    return params.N0 * math.exp(-t / params.tau_loss)


def initial_state(spec: InitialStateSpec, n_min: int, n_max: int) -> ModeAmplitudes:
    """Build the starting amplitudes on the given window, normalized to 1."""
    if not n_min <= 0 <= n_max:
        raise ValueError("window must contain n = 0")
    amps = np.zeros(n_max - n_min + 1, dtype=complex)
    amps[-n_min] = 1.0
    if spec.kind == "noise":
        amp = spec.noise_amp
        if amp > 0.0:
            if n_max < 1:
                raise ValueError("noise seeding needs n = 1 inside the window")
            rng = np.random.default_rng(spec.rng_seed)
            phase = rng.uniform(0.0, 2.0 * np.pi)
            amps[1 - n_min] = amp * np.exp(1j * phase)
            amps /= np.sqrt(np.sum(np.abs(amps) ** 2))
    return ModeAmplitudes(n_min=n_min, n_max=n_max, amps=amps)
