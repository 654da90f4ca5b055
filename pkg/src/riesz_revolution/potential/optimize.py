"""
Minimisation of the discrete K-energy over the curve parameters of N points.

Projected gradient descent with Armijo backtracking; the trial step is the Barzilai-Borwein length of the
previous iteration. Open curves project the parameters onto [0, 1]; closed curves keep unwrapped parameters
with a span of at most 1. A step that would reorder the points (or make them coincide under a kernel that is
singular on the diagonal) is halved like any rejected step.
"""
from __future__ import annotations
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import List, Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from riesz_revolution.config import settings
from riesz_revolution.config.settings import get_advanced_optimizer_options, get_optimizer_options, get_seed
from riesz_revolution.exceptions import DomainError, NoProgressError, SingularityError
from riesz_revolution.potential.energy import (Configuration, EnergyReport, equispaced_params, parameter_energy,
                                               parameter_gradient, separation_radius)
from riesz_revolution.potential.geometry import Curve
from riesz_revolution.potential.kernel import KernelSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OptimizeOptions:
    """Validated optimizer options; see :func:`riesz_revolution.config.settings.get_advanced_optimizer_options`."""
    max_iterations: int = settings.MAX_ITERATIONS
    grad_tol: float = settings.GRAD_TOL
    restarts: int = settings.RESTARTS
    jitter: float = settings.JITTER
    seed: int = settings.SEED
    workers: int = settings.WORKERS

    def __post_init__(self):
        try:
            get_advanced_optimizer_options(self.max_iterations, self.grad_tol, self.restarts, self.jitter,
                                           self.seed, self.workers)
        except ValueError as exc:
            raise DomainError(str(exc)) from exc

    @classmethod
    def from_task(cls, task: str = 'default', **overrides) -> OptimizeOptions:
        try:
            options = get_optimizer_options(task)
        except ValueError as exc:
            raise DomainError(str(exc)) from exc
        options.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**options)

    def with_seed_override(self) -> OptimizeOptions:
        """Copy with the seed replaced by ``RIESZ_SEED`` when that variable is set."""
        return replace(self, seed=get_seed(self.seed))


@dataclass(frozen=True)
class _Run:
    index: int
    params: NDArray[np.float64]
    energy: float
    gradient_sup_norm: float
    iterations: int
    converged: bool
    stalled_at_start: bool


def _projected_gradient(curve: Curve, params: NDArray, gradient: NDArray) -> NDArray:
    if curve.closed:
        return gradient
    at_lower = (params <= 0.0) & (gradient > 0)
    at_upper = (params >= 1.0) & (gradient < 0)
    return np.where(at_lower | at_upper, 0.0, gradient)


def _project(curve: Curve, params: NDArray) -> NDArray:
    return params if curve.closed else np.clip(params, 0.0, 1.0)


def _ordered(curve: Curve, params: NDArray, strict: bool) -> bool:
    gaps = np.diff(params)
    if curve.closed:
        gaps = np.append(gaps, params[0] + 1.0 - params[-1])
    return bool(np.all(gaps > 0)) if strict else bool(np.all(gaps >= 0))


def _mean_gap(curve: Curve, n: int) -> float:
    return 1.0 / n if curve.closed else 1.0 / (n - 1)


def _start_params(curve: Curve, n: int, opts: OptimizeOptions, restart: int) -> NDArray[np.float64]:
    params = equispaced_params(curve, n)
    if restart == 0 or opts.jitter == 0:
        return params
    rng = np.random.default_rng(np.random.SeedSequence([opts.seed, restart]))
    params = params + opts.jitter * _mean_gap(curve, n) * rng.uniform(-1.0, 1.0, size=n)
    return np.sort(_project(curve, params))


def _normalise_start(curve: Curve, params: ArrayLike) -> NDArray[np.float64]:
    params = np.array(params, dtype=float).ravel()
    if params.size < 2:
        raise DomainError(f'need at least two points, got {params.size}')
    if curve.closed:
        params = np.mod(params, 1.0)
    elif np.any((params < 0) | (params > 1)):
        raise DomainError('initial parameters outside [0, 1] on an open curve')
    return np.sort(params)


def _descend(spec: KernelSpec, curve: Curve, params: NDArray[np.float64], opts: OptimizeOptions,
             index: int = 0) -> _Run:
    strict = spec.singular_diagonal
    n = params.size
    energy = parameter_energy(spec, curve, params)
    gradient = parameter_gradient(spec, curve, params)
    projected = _projected_gradient(curve, params, gradient)
    sup_norm = float(np.max(np.abs(projected)))
    step = settings.INITIAL_STEP_FRACTION * _mean_gap(curve, n) / sup_norm if sup_norm > 0 else 1.0
    low, high = settings.BB_STEP_BOUNDS

    iterations = 0
    converged = sup_norm <= opts.grad_tol
    stalled_at_start = False
    while not converged and iterations < opts.max_iterations:
        alpha = step
        accepted = False
        for _ in range(settings.MAX_BACKTRACKS):
            trial = _project(curve, params - alpha * gradient)
            if _ordered(curve, trial, strict):
                try:
                    trial_energy = parameter_energy(spec, curve, trial)
                except SingularityError:
                    trial_energy = np.inf
                decrease = float(gradient @ (params - trial))
                if trial_energy <= energy - settings.ARMIJO_SUFFICIENT_DECREASE * decrease:
                    accepted = True
                    break
            alpha *= settings.ARMIJO_SHRINK

        if not accepted:
            stalled_at_start = iterations == 0
            logger.debug(f'restart {index}: line search failed at iteration {iterations} '
                         f'(gradient sup-norm {sup_norm:.3e})')
            break

        assert trial_energy <= energy, 'accepted step increased the energy'
        trial_gradient = parameter_gradient(spec, curve, trial)
        s_vec = trial - params
        y_vec = trial_gradient - gradient
        sy = float(s_vec @ y_vec)
        step = float(np.clip(s_vec @ s_vec / sy, low, high)) if sy > 0 else min(2.0 * alpha, high)

        params, energy, gradient = trial, trial_energy, trial_gradient
        projected = _projected_gradient(curve, params, gradient)
        sup_norm = float(np.max(np.abs(projected)))
        iterations += 1
        converged = sup_norm <= opts.grad_tol
        if iterations % settings.LOG_EVERY == 0:
            logger.debug(f'restart {index}: iteration {iterations}, energy {energy:.15g}, '
                         f'gradient sup-norm {sup_norm:.3e}')

    logger.info(f'restart {index}: energy {energy:.15g} after {iterations} iterations, '
                f'gradient sup-norm {sup_norm:.3e}, converged {converged}')
    return _Run(index=index, params=params, energy=energy, gradient_sup_norm=sup_norm, iterations=iterations,
                converged=converged, stalled_at_start=stalled_at_start)


def _finish(spec: KernelSpec, curve: Curve, run: _Run, restarts_used: int) -> Tuple[Configuration, EnergyReport]:
    config = Configuration.from_params(curve, run.params)
    report = EnergyReport(energy=run.energy, gradient_sup_norm=run.gradient_sup_norm,
                          separation=separation_radius(config), iterations=run.iterations,
                          restarts_used=restarts_used, converged=run.converged)
    if not run.converged:
        logger.warning(f'optimizer stopped before reaching the gradient tolerance: sup-norm '
                       f'{run.gradient_sup_norm:.3e} after {run.iterations} iterations')
    return config, report


def descend(spec: KernelSpec, curve: Curve, initial_params: ArrayLike,
            opts: OptimizeOptions = OptimizeOptions()) -> Tuple[Configuration, EnergyReport]:
    """
    Single descent run from the given parameters (no restarts).

    :raises NoProgressError: If the line search fails at the first iteration.
    """
    run = _descend(spec, curve, _normalise_start(curve, initial_params), opts)
    if run.stalled_at_start:
        raise NoProgressError('line search made no progress from the initial configuration')
    return _finish(spec, curve, run, restarts_used=1)


def minimize_energy(spec: KernelSpec, curve: Curve, n: int,
                    opts: OptimizeOptions = OptimizeOptions()) -> Tuple[Configuration, EnergyReport]:
    """
    Minimal K-energy configuration of n points on a curve, best of ``opts.restarts`` descent runs.

    Restart 0 starts equispaced; restart r > 0 adds a uniform jitter of ``opts.jitter`` mean gaps drawn from
    ``SeedSequence([seed, r])``. Restarts run on a thread pool when ``opts.workers > 1``; the result is the
    lowest energy, ties going to the lowest restart index, so the output does not depend on scheduling.

    :raises NoProgressError: If every restart fails its line search at iteration 0.
    :raises SingularityError: If a starting configuration is singular for the kernel.
    """
    if type(n) != int or n < 2:
        raise DomainError(f'need an integer n >= 2, got {n}')

    def run(restart: int) -> _Run:
        return _descend(spec, curve, _start_params(curve, n, opts, restart), opts, restart)

    if opts.workers > 1 and opts.restarts > 1:
        with ThreadPoolExecutor(max_workers=opts.workers) as pool:
            runs: List[_Run] = list(pool.map(run, range(opts.restarts)))
    else:
        runs = [run(r) for r in range(opts.restarts)]

    if all(r.stalled_at_start for r in runs):
        raise NoProgressError(f'all {opts.restarts} restarts failed their line search at iteration 0')
    best = min(runs, key=lambda r: (r.energy, r.index))
    logger.info(f'best of {opts.restarts} restarts: restart {best.index}, energy {best.energy:.15g}, '
                f'{best.iterations} iterations')
    return _finish(spec, curve, best, restarts_used=opts.restarts)
