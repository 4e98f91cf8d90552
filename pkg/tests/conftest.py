import pytest

from becring import parse_config, run_relaxation


DEFAULT_RELAXATION = "[run]\nscenario = relaxation\n"


@pytest.fixture(scope="session")
def default_cfg():
    return parse_config(DEFAULT_RELAXATION)


@pytest.fixture(scope="session")
def relaxation_result(default_cfg):
    """Default unseeded relaxation run, shared by the slower tests."""
    return run_relaxation(default_cfg)
