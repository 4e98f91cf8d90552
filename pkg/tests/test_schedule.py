import math

import numpy as np
import pytest

from becring import (InitialStateSpec, ModelParams, Schedule, Segment,
                     atom_number, constant_schedule, controls_at, initial_state)
from becring.constants import TWO_PI


def params(**kw):
    opts = dict(omega_r=TWO_PI * 13.6e3, delta=TWO_PI * 13.6e3,
                Delta=2 * TWO_PI * 13.6e3, g=26.0, N0=250000.0,
                kappa=TWO_PI * 5.0e3, tau_loss=1.0e-3)
    opts.update(kw)
    return ModelParams(**opts)


def two_pulse_schedule(eta=1e6, t_end=1.2e-3):
    return Schedule(
        eps_segments=(Segment(0.0, 0.6e-3, 1.8), Segment(0.6e-3, t_end, 0.0)),
        eta_segments=(Segment(0.0, 0.1e-3, eta), Segment(0.1e-3, 0.6e-3, 0.0),
                      Segment(0.6e-3, 0.7e-3, eta), Segment(0.7e-3, t_end, 0.0)),
        init=InitialStateSpec(kind="pure"))


class TestScheduleValidation:
    def test_gap_rejected(self):
        with pytest.raises(ValueError):
            Schedule(eps_segments=(Segment(0, 1e-4, 0.6), Segment(2e-4, 1e-3, 0.6)),
                     eta_segments=(Segment(0, 1e-3, 0.0),),
                     init=InitialStateSpec())

    def test_overlap_rejected(self):
        with pytest.raises(ValueError):
            Schedule(eps_segments=(Segment(0, 5e-4, 0.6), Segment(4e-4, 1e-3, 0.6)),
                     eta_segments=(Segment(0, 1e-3, 0.0),),
                     init=InitialStateSpec())

    def test_negative_eps_rejected(self):
        with pytest.raises(ValueError):
            constant_schedule(-0.1, 0.0, 1e-3, InitialStateSpec())

    def test_negative_eta_rejected(self):
        with pytest.raises(ValueError):
            constant_schedule(0.6, -1.0, 1e-3, InitialStateSpec())

    def test_mismatched_spans_rejected(self):
        with pytest.raises(ValueError):
            Schedule(eps_segments=(Segment(0, 1e-3, 0.6),),
                     eta_segments=(Segment(0, 2e-3, 0.0),),
                     init=InitialStateSpec())

    def test_must_start_at_zero(self):
        with pytest.raises(ValueError):
            Schedule(eps_segments=(Segment(1e-4, 1e-3, 0.6),),
                     eta_segments=(Segment(1e-4, 1e-3, 0.0),),
                     init=InitialStateSpec())

    def test_breakpoints_sorted_unique(self):
        sch = two_pulse_schedule()
        assert sch.breakpoints() == [0.1e-3, 0.6e-3, 0.7e-3]


class TestControlsAt:
    def test_two_pulse_during_first_seed(self):
        eps, eta = controls_at(two_pulse_schedule(eta=1e6), 50e-6)
        assert eps == 1.8
        assert eta == 1e6

    def test_two_pulse_second_pulse_eps_already_zero(self):
        eps, eta = controls_at(two_pulse_schedule(eta=1e6), 0.7e-3 - 1e-9)
        assert eps == 0.0
        assert eta == 1e6

    def test_constant_relaxation(self):
        sch = constant_schedule(0.6, 0.0, 2e-3, InitialStateSpec())
        for t in (0.0, 1e-4, 1.3e-3, 2e-3):
            assert controls_at(sch, t) == (0.6, 0.0)

    def test_right_continuous_at_breakpoint(self):
        sch = two_pulse_schedule(eta=1e6)
        assert controls_at(sch, 0.1e-3) == (1.8, 0.0)
        assert controls_at(sch, 0.6e-3) == (0.0, 1e6)

    def test_outside_coverage_rejected(self):
        sch = constant_schedule(0.6, 0.0, 1e-3, InitialStateSpec())
        with pytest.raises(ValueError):
            controls_at(sch, 1.5e-3)
        with pytest.raises(ValueError):
            controls_at(sch, -1e-6)


class TestAtomNumber:
    def test_initial_value(self):
        assert atom_number(params(), 0.0) == 250000.0

    def test_one_loss_time(self):
        # forced analytically: N0/e at t = tau_loss
        val = atom_number(params(), 1e-3)
        assert val == pytest.approx(250000.0 / math.e, rel=1e-15)
        assert val == pytest.approx(91970.0, rel=1e-4)

    def test_loss_disabled(self):
        p = params(tau_loss=math.inf)
        assert atom_number(p, 0.0) == 250000.0
        assert atom_number(p, 5.0) == 250000.0


class TestInitialState:
    def test_pure(self):
        m = initial_state(InitialStateSpec(kind="pure"), -5, 5)
        expect = np.zeros(11)
        expect[5] = 1.0
        assert np.array_equal(np.abs(m.amps) ** 2, expect)

    def test_noise_amp_zero_is_pure(self):
        m = initial_state(InitialStateSpec(kind="noise", noise_amp=0.0), -5, 5)
        p = initial_state(InitialStateSpec(kind="pure"), -5, 5)
        assert np.array_equal(m.amps, p.amps)

    def test_default_noise_amp_is_half_quantum(self):
        # |c_1|^2 = 1/(2 N0) = 2e-6 before renormalization
        spec = InitialStateSpec(kind="noise")
        assert spec.noise_amp ** 2 == pytest.approx(1 / (2 * 250000), rel=1e-12)
        m = initial_state(spec, -5, 5)
        norm = m.norm_sq
        assert m.amps[6] is not None
        assert abs(m.amps[6]) ** 2 * (1 + spec.noise_amp ** 2) == \
            pytest.approx(2e-6, rel=1e-10)
        assert norm == pytest.approx(1.0, abs=1e-15)

    def test_normalized_even_for_large_noise(self):
        m = initial_state(InitialStateSpec(kind="noise", noise_amp=0.5), -5, 5)
        assert m.norm_sq == pytest.approx(1.0, abs=1e-15)

    def test_same_seed_same_phases(self):
        a = initial_state(InitialStateSpec(kind="noise", rng_seed=42), -5, 5)
        b = initial_state(InitialStateSpec(kind="noise", rng_seed=42), -5, 5)
        assert np.array_equal(a.amps, b.amps)

    def test_different_seeds_differ(self):
        a = initial_state(InitialStateSpec(kind="noise", rng_seed=1), -5, 5)
        b = initial_state(InitialStateSpec(kind="noise", rng_seed=2), -5, 5)
        assert not np.array_equal(a.amps, b.amps)
        # only the phase differs, not the magnitude
        assert abs(a.amps[6]) == pytest.approx(abs(b.amps[6]), rel=1e-14)

    def test_window_must_contain_zero(self):
        with pytest.raises(ValueError):
            initial_state(InitialStateSpec(kind="pure"), 1, 5)

    def test_unknown_kind_rejected(self):
        with pytest.raises(ValueError):
            InitialStateSpec(kind="thermal")
