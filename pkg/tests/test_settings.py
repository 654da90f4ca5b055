import os
from unittest.mock import patch

import pytest

from riesz_revolution.config import settings
from riesz_revolution.config.settings import (get_advanced_optimizer_options, get_log_level, get_optimizer_options,
                                              get_seed)
from riesz_revolution.exceptions import UsageError


# Test get_seed
def test_get_seed_defaults():
    assert get_seed() == settings.SEED
    assert get_seed(42) == 42


@patch.dict(os.environ, {"RIESZ_SEED": "123"})
def test_get_seed_environment_override():
    assert get_seed(42) == 123


@pytest.mark.parametrize("value", ["abc", "-3", "1.5"])
def test_get_seed_invalid_environment(value):
    with patch.dict(os.environ, {"RIESZ_SEED": value}):
        with pytest.raises(UsageError):
            get_seed()


@patch.dict(os.environ, {"RIESZ_SEED": " "})
def test_get_seed_blank_environment_is_ignored():
    assert get_seed(7) == 7


# Test get_log_level
def test_get_log_level(monkeypatch):
    monkeypatch.delenv("RIESZ_LOG_LEVEL", raising=False)
    assert get_log_level() == "WARNING"
    monkeypatch.setenv("RIESZ_LOG_LEVEL", "debug")
    assert get_log_level() == "DEBUG"


# Test get_optimizer_options
@pytest.mark.parametrize("task", ["default", "desk", "quick"])
def test_get_optimizer_options(task):
    options = get_optimizer_options(task)
    assert set(options) == {"max_iterations", "grad_tol", "restarts", "jitter", "seed", "workers"}
    # a copy, presets stay untouched
    options["restarts"] = 99
    assert settings.OPTIMIZER_PRESETS[task]["restarts"] != 99


def test_get_optimizer_options_invalid_task():
    with pytest.raises(ValueError):
        get_optimizer_options("overnight")


# Test get_advanced_optimizer_options
def test_get_advanced_optimizer_options_defaults():
    options = get_advanced_optimizer_options()
    assert options == {"max_iterations": settings.MAX_ITERATIONS, "grad_tol": settings.GRAD_TOL,
                       "restarts": settings.RESTARTS, "jitter": settings.JITTER, "seed": settings.SEED,
                       "workers": settings.WORKERS}
    assert isinstance(get_advanced_optimizer_options(grad_tol=1)["grad_tol"], float)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"max_iterations": 0},
        {"max_iterations": 10.0},
        {"grad_tol": 0.0},
        {"grad_tol": "small"},
        {"restarts": 0},
        {"jitter": 0.5},
        {"jitter": -0.1},
        {"seed": -1},
        {"workers": 0},
    ],
)
def test_get_advanced_optimizer_options_invalid(kwargs):
    with pytest.raises(ValueError):
        get_advanced_optimizer_options(**kwargs)
