"""
Asymptotics of the minimal N-point energy.

The normalisation follows the regime of the kernel's Riesz exponent on a curve (k0 counts as s = 0, k1 as 1):

- s < 2   potential regime, E / N^2 tends to the minimal continuous energy.
- s = 2   boundary regime, E / (N^2 log N).
- s > 2   hypersingular regime, E / N^s.

The limit is extrapolated from a doubling sequence of N: a full Richardson table in 1/N for the potential and
hypersingular regimes, a least-squares fit of L + A / log N + B / N
over all sizes for the boundary regime.
"""
from __future__ import annotations
import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from riesz_revolution.exceptions import DomainError
from riesz_revolution.potential.geometry import Curve, Segment
from riesz_revolution.potential.kernel import KernelSpec, KernelVariant, infinity_coefficient
from riesz_revolution.potential.optimize import OptimizeOptions, minimize_energy
from riesz_revolution.potential.specfun import riemann_zeta

logger = logging.getLogger(__name__)

SCALING_COLUMNS = ['n', 'energy', 'normalized', 'separation', 'separation_n', 'gradient_sup_norm', 'converged']


def scaling_regime(spec: KernelSpec) -> str:
    s = spec.effective_s
    if s < 2.0:
        return 'potential'
    if s == 2.0:
        return 'boundary'
    return 'hypersingular'


def normalize_energy(spec: KernelSpec, n: int, energy: float) -> float:
    regime = scaling_regime(spec)
    if regime == 'potential':
        return energy / n ** 2
    if regime == 'boundary':
        return energy / (n ** 2 * math.log(n))
    return energy / n ** spec.effective_s


def richardson_limit(step_ratio: float, values: Sequence[float]) -> float:
    """Top of the Richardson table for values at steps shrinking by ``step_ratio``, error terms h, h^2, ..."""
    last_level = list(values)
    if not last_level:
        raise DomainError('Richardson extrapolation needs at least one value')
    for m in range(1, len(last_level)):
        mult = step_ratio ** m
        last_level = [(mult * high - low) / (mult - 1.0) for low, high in zip(last_level[:-1], last_level[1:])]
    return last_level[0]


def log_rate_limit(n_list: Sequence[int], values: Sequence[float]) -> float:
    """
    Limit L of f(N) = L + A / log N + B / N, fitted by least squares over all points (exact for three).

    :raises DomainError: For fewer than three points.
    """
    n = np.asarray(n_list, dtype=float)
    f = np.asarray(values, dtype=float)
    if n.size < 3 or n.size != f.size:
        raise DomainError(f'the log-rate fit needs at least three points, got {n.size}')
    design = np.column_stack([np.ones_like(n), 1.0 / np.log(n), 1.0 / n])
    coefficients, *_ = np.linalg.lstsq(design, f, rcond=None)
    return float(coefficients[0])


def scaling_constant(spec: KernelSpec, curve: Curve) -> Optional[float]:
    """
    Predicted limit of the normalised energy where a closed form exists: the limit kernel on a segment of
    length L in the hypersingular regime, 2 zeta(s - 1) c_s / L^{s-1}, and in the boundary regime 2 / L.
    """
    if spec.variant is not KernelVariant.KSINF or not isinstance(curve, Segment):
        return None
    regime = scaling_regime(spec)
    if regime == 'hypersingular':
        return 2.0 * riemann_zeta(spec.s - 1.0) * infinity_coefficient(spec.s) / curve.length ** (spec.s - 1.0)
    if regime == 'boundary':
        return 2.0 / curve.length
    return None


def energy_scaling_estimate(spec: KernelSpec, curve: Curve, n_list: Sequence[int],
                            opts: OptimizeOptions = OptimizeOptions()) -> Tuple[float, pd.DataFrame]:
    """
    Minimise the energy for every N of a doubling sequence and extrapolate the normalised energy.

    :param n_list: At least three sizes, each twice the previous.
    :return: The extrapolated limit and a table with columns n, energy, normalized, separation, separation_n,
             gradient_sup_norm, converged.
    :raises DomainError: For a sequence that is too short or not doubling.
    """
    n_list = [int(n) for n in n_list]
    if len(n_list) < 3:
        raise DomainError(f'scaling needs at least three sizes, got {len(n_list)}')
    if n_list[0] < 2 or any(b != 2 * a for a, b in zip(n_list[:-1], n_list[1:])):
        raise DomainError(f'sizes must double from at least 2, got {n_list}')

    rows: List[dict] = []
    for n in n_list:
        config, report = minimize_energy(spec, curve, n, opts)
        rows.append({'n': n, 'energy': report.energy, 'normalized': normalize_energy(spec, n, report.energy),
                     'separation': report.separation, 'separation_n': report.separation * n,
                     'gradient_sup_norm': report.gradient_sup_norm, 'converged': report.converged})
        logger.info(f'scaling: n = {n}, normalized energy {rows[-1]["normalized"]:.15g}')
    table = pd.DataFrame(rows, columns=SCALING_COLUMNS)

    normalized = table['normalized'].to_numpy()
    if scaling_regime(spec) == 'boundary':
        limit = log_rate_limit(n_list, normalized)
    else:
        limit = richardson_limit(2.0, normalized)
    if not np.isfinite(limit):
        raise DomainError('extrapolated limit is not finite')
    return float(limit), table
