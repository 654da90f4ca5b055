import logging

import numpy as np
import pytest

from riesz_revolution.config import settings
from riesz_revolution.exceptions import DomainError, NoProgressError
from riesz_revolution.potential.energy import Configuration, discrete_energy, equispaced_params
from riesz_revolution.potential.geometry import Circle, Segment
from riesz_revolution.potential.kernel import KernelSpec
from riesz_revolution.potential.optimize import OptimizeOptions, _start_params, descend, minimize_energy


@pytest.fixture
def segment():
    return Segment((1, -0.5), (1, 0.5))


@pytest.fixture
def quick():
    return OptimizeOptions.from_task("quick")


@pytest.mark.parametrize(
    "task, expected",
    [
        ("default", {"max_iterations": 10000, "restarts": 8}),
        ("desk", {"max_iterations": 4000, "restarts": 2}),
        ("quick", {"max_iterations": 1500, "restarts": 1, "grad_tol": 1e-8}),
    ],
)
def test_options_from_task(task, expected):
    opts = OptimizeOptions.from_task(task)
    for key, value in expected.items():
        assert getattr(opts, key) == value
    assert opts.seed == settings.SEED


def test_options_overrides_and_validation():
    assert OptimizeOptions.from_task("quick", restarts=3, seed=None).restarts == 3
    with pytest.raises(DomainError):
        OptimizeOptions.from_task("slow")
    with pytest.raises(DomainError):
        OptimizeOptions(jitter=0.6)
    with pytest.raises(DomainError):
        OptimizeOptions(restarts=0)
    with pytest.raises(DomainError):
        OptimizeOptions(grad_tol=-1.0)


def test_seed_override(monkeypatch):
    opts = OptimizeOptions(seed=3)
    assert opts.with_seed_override().seed == 3
    monkeypatch.setenv(settings.SEED_ENV_VAR, "17")
    assert opts.with_seed_override().seed == 17
    monkeypatch.setenv(settings.SEED_ENV_VAR, "seventeen")
    with pytest.raises(ValueError):
        opts.with_seed_override()


def test_start_params(segment):
    opts = OptimizeOptions(jitter=0.2, seed=5)
    np.testing.assert_array_equal(_start_params(segment, 5, opts, 0), equispaced_params(segment, 5))
    jittered = _start_params(segment, 5, opts, 1)
    assert np.all(np.abs(jittered - equispaced_params(segment, 5)) <= 0.2 * 0.25)
    assert np.all(np.diff(jittered) > 0)
    np.testing.assert_array_equal(jittered, _start_params(segment, 5, opts, 1))
    assert not np.array_equal(jittered, _start_params(segment, 5, opts, 2))


def test_descend_centers_the_middle_point(segment, quick):
    config, report = descend(KernelSpec("ksinf", s=3.0), segment, [0.0, 0.3, 1.0], quick)
    assert report.restarts_used == 1
    np.testing.assert_allclose(config.params, [0.0, 0.5, 1.0], atol=1e-6)
    assert report.separation == pytest.approx(0.5, abs=1e-6)


def test_minimize_decreases_the_energy(segment):
    spec = KernelSpec("ks", s=0.5)
    opts = OptimizeOptions.from_task("quick", restarts=2)
    config, report = minimize_energy(spec, segment, 6, opts)
    start = Configuration.from_params(segment, equispaced_params(segment, 6))
    assert report.energy <= discrete_energy(spec, start)
    assert report.energy == pytest.approx(discrete_energy(spec, config), rel=1e-12)
    assert report.restarts_used == 2
    assert np.all(np.diff(config.params) >= 0)


def test_minimize_keeps_singular_points_apart(segment, quick):
    config, report = minimize_energy(KernelSpec("ks", s=1.5), segment, 5, quick)
    assert np.all(np.diff(config.params) > 0)
    assert report.separation > 0


def test_minimize_hypersingular_segment_is_symmetric(segment, quick):
    config, _ = minimize_energy(KernelSpec("ksinf", s=3.0), segment, 10, quick)
    np.testing.assert_allclose(config.params + config.params[::-1], 1.0, atol=1e-6)
    assert config.params[0] == 0.0
    assert config.params[-1] == 1.0


def test_minimize_regular_polygon(quick):
    circle = Circle((2, 0), 1.0)
    config, report = minimize_energy(KernelSpec("ksinf", s=3.0), circle, 6, quick)
    assert report.separation == pytest.approx(1.0, abs=1e-4)


def test_minimize_is_independent_of_workers(segment):
    spec = KernelSpec("ks", s=0.5)
    serial = OptimizeOptions.from_task("quick", restarts=3, jitter=0.2, seed=9, workers=1)
    threaded = OptimizeOptions.from_task("quick", restarts=3, jitter=0.2, seed=9, workers=3)
    config_serial, report_serial = minimize_energy(spec, segment, 5, serial)
    config_threaded, report_threaded = minimize_energy(spec, segment, 5, threaded)
    np.testing.assert_array_equal(config_serial.params, config_threaded.params)
    assert report_serial == report_threaded


def test_minimize_validates_n(segment, quick):
    with pytest.raises(DomainError):
        minimize_energy(KernelSpec("k0"), segment, 1, quick)
    with pytest.raises(DomainError):
        minimize_energy(KernelSpec("k0"), segment, 2.5, quick)


def test_stalled_line_search(segment, quick, monkeypatch):
    monkeypatch.setattr(settings, "MAX_BACKTRACKS", 0)
    with pytest.raises(NoProgressError):
        descend(KernelSpec("ksinf", s=3.0), segment, [0.0, 0.3, 1.0], quick)
    with pytest.raises(NoProgressError):
        minimize_energy(KernelSpec("ks", s=0.5), segment, 4, OptimizeOptions.from_task("quick", restarts=2))


def test_unconverged_run_is_reported(segment, caplog):
    opts = OptimizeOptions(max_iterations=1, grad_tol=1e-14, restarts=1)
    with caplog.at_level(logging.WARNING, logger="riesz_revolution.potential.optimize"):
        _, report = descend(KernelSpec("ksinf", s=3.0), segment, [0.0, 0.3, 1.0], opts)
    assert not report.converged
    assert report.iterations == 1
    assert "before reaching the gradient tolerance" in caplog.text


def test_every_restart_is_logged(segment, caplog):
    opts = OptimizeOptions.from_task("quick", restarts=3, jitter=0.2, seed=2)
    with caplog.at_level(logging.INFO, logger="riesz_revolution.potential.optimize"):
        minimize_energy(KernelSpec("ks", s=0.5), segment, 4, opts)
    finished = [record for record in caplog.records
                if record.levelno == logging.INFO and "iterations, gradient sup-norm" in record.getMessage()]
    assert sorted(record.getMessage().split(":")[0] for record in finished) == ["restart 0", "restart 1",
                                                                                  "restart 2"]
    assert "best of 3 restarts" in caplog.text
