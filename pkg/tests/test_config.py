import math

import pytest

from becring import ConfigError, parse_config, serialize_config
from becring.constants import TWO_PI

MINIMAL = "[run]\nscenario = relaxation\neps = 0.6\n"


class TestDefaults:
    def test_pinned_parameter_defaults(self):
        cfg = parse_config(MINIMAL)
        p = cfg.params
        assert p.omega_r == pytest.approx(TWO_PI * 13.6e3, rel=1e-12)
        assert p.kappa == pytest.approx(TWO_PI * 5e3, rel=1e-12)
        assert p.N0 == 250000
        assert p.tau_loss == pytest.approx(1e-3)
        assert (p.n_min, p.n_max) == (-5, 5)
        assert p.delta == pytest.approx(p.omega_r, rel=1e-12)
        assert p.Delta == pytest.approx(2 * p.omega_r, rel=1e-12)

    def test_scenario_and_eps_taken_from_text(self):
        cfg = parse_config("[run]\nscenario = seeded\neps = 1.8\n")
        assert cfg.scenario == "seeded"
        assert cfg.eps == 1.8

    def test_default_sweep_is_22_points(self):
        cfg = parse_config(MINIMAL)
        assert len(cfg.sweep_eps) == 22
        assert cfg.sweep_eps[0] == 0.0
        assert cfg.sweep_eps[-1] == pytest.approx(2.1)
        assert cfg.sweep_t_hold == pytest.approx(1.5e-3)

    def test_tau_loss_inf_allowed(self):
        cfg = parse_config(MINIMAL + "[model]\ntau_loss = inf\n")
        assert math.isinf(cfg.params.tau_loss)


class TestErrors:
    def test_unknown_key_named_with_line(self):
        text = MINIMAL + "[model]\nomega_R = 1.0\n"
        with pytest.raises(ConfigError) as exc:
            parse_config(text)
        assert "omega_R" in str(exc.value)
        assert "line 5" in str(exc.value)

    def test_unknown_section_rejected(self):
        with pytest.raises(ConfigError, match="laser"):
            parse_config(MINIMAL + "[laser]\npower = 1\n")

    def test_negative_eps_range_error_names_eps(self):
        with pytest.raises(ConfigError, match="eps"):
            parse_config("[run]\nscenario = relaxation\neps = -0.1\n")

    def test_eps_above_3_rejected(self):
        with pytest.raises(ConfigError, match="eps"):
            parse_config("[run]\nscenario = relaxation\neps = 3.5\n")

    def test_missing_scenario_rejected(self):
        with pytest.raises(ConfigError, match="scenario"):
            parse_config("[run]\neps = 0.6\n")

    def test_unparsable_value_reports_key(self):
        with pytest.raises(ConfigError, match="t_end"):
            parse_config("[run]\nscenario = relaxation\nt_end = soon\n")

    def test_duplicate_key_rejected(self):
        with pytest.raises(ConfigError, match="duplicate"):
            parse_config("[run]\nscenario = relaxation\neps = 0.6\neps = 0.7\n")

    def test_key_outside_section_rejected(self):
        with pytest.raises(ConfigError, match="section"):
            parse_config("eps = 0.6\n")

    def test_bad_scenario_value(self):
        with pytest.raises(ConfigError, match="scenario"):
            parse_config("[run]\nscenario = warmup\n")

    def test_nonpositive_kappa_rejected(self):
        with pytest.raises(ConfigError, match="kappa"):
            parse_config(MINIMAL + "[model]\nkappa = 0\n")

    def test_decreasing_eps_list_rejected(self):
        with pytest.raises(ConfigError):
            parse_config(MINIMAL + "[sweep]\neps_list = 1.0,0.5\n")


class TestRoundTrip:
    def test_parse_serialize_parse_is_identity(self):
        cfg = parse_config(MINIMAL)
        again = parse_config(serialize_config(cfg))
        assert again == cfg

    def test_round_trip_with_overrides(self):
        text = (MINIMAL
                + "[model]\ng = 31.5\ntau_loss = inf\n"
                + "[init]\nkind = pure\n"
                + "[seed]\neta = 2.5e6\n"
                + "[step]\nmode = fixed\n"
                + "[sweep]\neps_list = 0.0,0.5,1.0\nreplicas = 3\n")
        cfg = parse_config(text)
        again = parse_config(serialize_config(cfg))
        assert again == cfg
        assert cfg.seed_eta == 2.5e6
        assert cfg.sweep_eps == (0.0, 0.5, 1.0)

    def test_comments_and_blank_lines_ignored(self):
        text = "# header\n\n[run]\nscenario = relaxation  # inline\n\neps = 0.6\n"
        assert parse_config(text).eps == 0.6

    def test_serialized_form_echoes_seed(self):
        cfg = parse_config(MINIMAL + "rng_seed = 77\n")
        assert "rng_seed = 77" in serialize_config(cfg)
