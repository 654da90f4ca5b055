"""
Support of the s-equilibrium measure: the three-point exclusion test and configuration coverage measures.

Take the segment point x on the real axis and the conjugate pair 1 +/- i gamma carrying charge 1/2 each. The
exclusion difference

    Delta_s(x, gamma) = K_s(x, 1 + i gamma) - (K_s(1 + i gamma, 1 + i gamma) + K_s(1 + i gamma, 1 - i gamma)) / 2

is positive exactly when the pair sees a larger potential at x than on itself, which keeps x out of the
support. Its zero in s is s_1; at x = gamma = 1/2 it lies near 0.341107.
"""
from __future__ import annotations
import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from numpy.typing import ArrayLike, NDArray
from scipy.optimize import bisect

from riesz_revolution.config import settings
from riesz_revolution.exceptions import CrossCheckError, DomainError, NoSignChangeError
from riesz_revolution.potential.energy import Configuration
from riesz_revolution.potential.geometry import Circle, CircularArc
from riesz_revolution.potential.kernel import (KernelSpec, KernelVariant, PointLike, as_half_plane_point,
                                               i_s_circle, kernel_pairs)
from riesz_revolution.potential.specfun import hyp2f1_with_complement, ln_gamma

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DeltaResult:
    x: float
    gamma: float
    s: float
    delta: float

    def __post_init__(self):
        if not math.isfinite(self.delta):
            raise DomainError(f'non-finite exclusion difference at x = {self.x}, gamma = {self.gamma}, s = {self.s}')

    @property
    def sign(self) -> int:
        return int(np.sign(self.delta))


def _check_delta_domain(x, gamma, s):
    if np.any(~(np.asarray(x) > 0)) or np.any(~(np.asarray(gamma) > 0)):
        raise DomainError('exclusion difference needs x > 0 and gamma > 0')
    if not 0.0 < s < 1.0:
        raise DomainError(f'exclusion difference needs 0 < s < 1, got {s}')


def _delta_kernel(x: NDArray, gamma: NDArray, s: float) -> NDArray:
    spec = KernelSpec(KernelVariant.KS, s=s)
    z = np.stack([x, np.zeros_like(x)], axis=-1)
    w = np.stack([np.ones_like(gamma), gamma], axis=-1)
    w_conj = np.stack([np.ones_like(gamma), -gamma], axis=-1)
    return kernel_pairs(spec, z, w) - 0.5 * (i_s_circle(s) + kernel_pairs(spec, w, w_conj))


def _delta_explicit(x: NDArray, gamma: NDArray, s: float) -> NDArray:
    g2 = gamma * gamma
    outer = (1.0 + x) ** 2 + g2
    inner = (1.0 - x) ** 2 + g2
    first = outer ** (-0.5 * s) * hyp2f1_with_complement(0.5 * s, 0.5, 1.0, 4.0 * x / outer, inner / outer)
    pair = 2.0 ** -s * (1.0 + g2) ** (-0.5 * s) * hyp2f1_with_complement(0.5 * s, 0.5, 1.0, 1.0 / (1.0 + g2),
                                                                         g2 / (1.0 + g2))
    diagonal = math.exp(-s * math.log(2.0) + ln_gamma(0.5 * (1.0 - s)) - 0.5 * math.log(math.pi)
                        - ln_gamma(1.0 - 0.5 * s))
    return first - 0.5 * pair - 0.5 * diagonal


def _delta_grid(x: ArrayLike, gamma: ArrayLike, s: float) -> NDArray[np.float64]:
    x, gamma = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(gamma, dtype=float))
    _check_delta_domain(x, gamma, s)
    shape = x.shape
    x = x.ravel()
    gamma = gamma.ravel()
    values = _delta_kernel(x, gamma, s)
    explicit = _delta_explicit(x, gamma, s)
    mismatch = np.abs(values - explicit)
    # relative to the size of the terms, both forms blow up like 1 / (1 - s)
    scale = np.maximum(1.0, np.maximum(np.abs(values), np.abs(explicit)))
    if np.any(mismatch > settings.DELTA_CROSS_CHECK_TOL * scale):
        raise CrossCheckError(f'exclusion difference forms disagree by {mismatch.max():.3e} at s = {s}')
    return values.reshape(shape)


def delta_s(x: float, gamma: float, s: float) -> float:
    """
    Exclusion difference Delta_s(x, gamma), built from the reduced kernel and checked against the explicit
    hypergeometric form to 1e-11 relative to max(1, |Delta_s|).

    :raises DomainError: Unless x > 0, gamma > 0 and 0 < s < 1.
    :raises CrossCheckError: If the two forms disagree.
    """
    return float(_delta_grid(x, gamma, s))


def delta_s_explicit(x: float, gamma: float, s: float) -> float:
    """Exclusion difference from its explicit hypergeometric form alone."""
    _check_delta_domain(x, gamma, s)
    return float(_delta_explicit(np.array([float(x)]), np.array([float(gamma)]), s)[0])


def evaluate_delta(x: float, gamma: float, s: float) -> DeltaResult:
    return DeltaResult(x=x, gamma=gamma, s=s, delta=delta_s(x, gamma, s))


def delta_slope_at_zero(x: float, gamma: float) -> float:
    """
    Limit of Delta_s / s as s -> 0+::

        1/2 log( 4 (gamma + sqrt(1 + gamma^2)) / (sqrt((1+x)^2 + gamma^2) + sqrt((1-x)^2 + gamma^2))^2 )
    """
    if not (x > 0 and gamma > 0):
        raise DomainError('slope needs x > 0 and gamma > 0')
    root_sum = math.hypot(1.0 + x, gamma) + math.hypot(1.0 - x, gamma)
    return 0.5 * math.log(4.0 * (gamma + math.hypot(1.0, gamma)) / root_sum ** 2)


def find_s1(x: float, gamma: float, bracket: Optional[Tuple[float, float]] = None,
            xtol: float = settings.S1_XTOL) -> float:
    """
    Zero s_1 of s -> Delta_s(x, gamma) in (0, 1) by bisection.

    The slope at s = 0+ must be positive. A sign scan on a 100-point grid over the bracket warns when it finds
    more than one sign change, so the located zero may not be unique there.

    :param bracket: Search interval, default (1e-6, 1 - 1e-6).
    :param xtol: Absolute tolerance of the final bisection interval.
    :raises NoSignChangeError: If the slope at 0+ is not positive or Delta_s keeps its sign over the bracket.
    """
    lower, upper = bracket if bracket is not None else settings.S1_BRACKET
    if not 0.0 < lower < upper < 1.0:
        raise DomainError(f'bracket must satisfy 0 < lower < upper < 1, got ({lower}, {upper})')
    slope = delta_slope_at_zero(x, gamma)
    if slope <= 0:
        raise NoSignChangeError(f'exclusion difference has slope {slope:.6g} <= 0 at s = 0+')

    def f(s):
        return delta_s(x, gamma, s)

    f_lower = f(lower)
    f_upper = f(upper)
    if not (f_lower > 0 and f_upper < 0):
        raise NoSignChangeError(f'exclusion difference has no sign change on [{lower}, {upper}] '
                                f'(values {f_lower:.6g}, {f_upper:.6g})')

    scan = np.sign([f(s) for s in np.linspace(lower, upper, settings.SIGN_SCAN_POINTS)])
    changes = int(np.count_nonzero(np.diff(scan[scan != 0])))
    if changes > 1:
        logger.warning(f'exclusion difference at x = {x}, gamma = {gamma} changes sign {changes} times; '
                       f'the located zero may not be unique')
    return float(bisect(f, lower, upper, xtol=xtol))


def delta_level_surface(x_grid: Sequence[float] = settings.LEVEL_SURFACE_X_GRID,
                        inv_gamma_grid: Sequence[float] = settings.LEVEL_SURFACE_INV_GAMMA_GRID,
                        s_grid: Sequence[float] = settings.LEVEL_SURFACE_S_GRID) -> pd.DataFrame:
    """
    Sign of Delta_s on the grid x_grid x inv_gamma_grid x s_grid.

    :return: DataFrame with columns x, inv_gamma, s, delta, sign in grid order (s slowest).
    """
    x_values = np.asarray(x_grid, dtype=float)
    inv_gamma = np.asarray(inv_gamma_grid, dtype=float)
    if not (np.all(np.isfinite(x_values)) and np.all(np.isfinite(inv_gamma))):
        raise DomainError('level surface grids must be finite')
    if np.any(inv_gamma <= 0):
        raise DomainError('inverse gamma grid must be positive')
    xx, gg = np.meshgrid(x_values, inv_gamma, indexing='ij')
    tables = []
    for s in s_grid:
        values = _delta_grid(xx.ravel(), 1.0 / gg.ravel(), float(s))
        tables.append(pd.DataFrame({'x': xx.ravel(), 'inv_gamma': gg.ravel(), 's': float(s),
                                    'delta': values, 'sign': np.sign(values).astype(int)}))
    table = pd.concat(tables, ignore_index=True)
    logger.info(f'level surface: {len(table)} cells, largest s with a positive cell: {max_positive_s(table)}')
    return table


def max_positive_s(table: pd.DataFrame) -> Optional[float]:
    """Largest s with a positive cell in a level-surface table, None if there is none."""
    positive = table.loc[table['sign'] > 0, 's']
    return None if positive.empty else float(positive.max())


def angular_coverage(config: Configuration, center: Optional[PointLike] = None) -> float:
    """
    Angle in degrees swept by the points about ``center``: 360 minus the excess of the largest angular gap over
    the uniform gap 360/n. Uniformly spread points give 360; points crowding one side give less.

    :param center: Defaults to the center of a circle or arc carrying the configuration.
    """
    if center is None:
        if not isinstance(config.curve, (Circle, CircularArc)):
            raise DomainError(f'angular coverage on a {config.curve.kind} needs an explicit center')
        center = config.curve.center
    center = as_half_plane_point(center)
    angles = np.sort(np.degrees(np.arctan2(config.points[:, 1] - center.y, config.points[:, 0] - center.x)))
    gaps = np.diff(np.append(angles, angles[0] + 360.0))
    return float(360.0 - (gaps.max() - 360.0 / config.n))


def nearest_point_distance(config: Configuration, point: PointLike) -> float:
    """Distance from ``point`` to the closest configuration point."""
    point = as_half_plane_point(point).as_array()
    return float(np.min(np.linalg.norm(config.points - point, axis=1)))
