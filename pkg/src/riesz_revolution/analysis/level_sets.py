"""Level sets of a kernel with one argument fixed, traced by marching squares."""
from __future__ import annotations
import logging
from typing import Sequence, Tuple

import numpy as np
import pandas as pd
from numpy.typing import NDArray
from skimage import measure

from riesz_revolution.config import settings
from riesz_revolution.exceptions import DomainError
from riesz_revolution.potential.kernel import KernelSpec, PointLike, as_half_plane_point, kernel_pairs

logger = logging.getLogger(__name__)

LEVELSET_COLUMNS = ['level', 'x0', 'y0', 'x1', 'y1']


def kernel_grid(spec: KernelSpec, w: PointLike,
                x_range: Tuple[float, float] = settings.LEVELSET_X_RANGE,
                y_range: Tuple[float, float] = settings.LEVELSET_Y_RANGE,
                resolution: int = settings.LEVELSET_RESOLUTION) -> Tuple[NDArray, NDArray, NDArray]:
    """
    Values of z -> K(z, w) on a regular grid of the half-plane.

    :return: x nodes, y nodes and the value array indexed [y, x]; a node that coincides with w under a
             singular kernel holds nan.
    """
    if resolution < 2:
        raise DomainError(f'grid resolution must be at least 2, got {resolution}')
    if x_range[0] < 0 or not x_range[1] > x_range[0] or not y_range[1] > y_range[0]:
        raise DomainError(f'invalid grid ranges {x_range}, {y_range}')
    w = as_half_plane_point(w)
    xs = np.linspace(x_range[0], x_range[1], resolution)
    ys = np.linspace(y_range[0], y_range[1], resolution)
    xx, yy = np.meshgrid(xs, ys)
    grid = np.stack([xx.ravel(), yy.ravel()], axis=-1)

    values = np.full(grid.shape[0], np.nan)
    valid = np.ones(grid.shape[0], dtype=bool)
    if spec.singular_diagonal or w.x == 0:
        valid = np.any(grid != w.as_array(), axis=1)
    values[valid] = kernel_pairs(spec, grid[valid], np.broadcast_to(w.as_array(), grid[valid].shape))
    return xs, ys, values.reshape(resolution, resolution)


def kernel_level_sets(spec: KernelSpec, w: PointLike, levels: Sequence[float],
                      x_range: Tuple[float, float] = settings.LEVELSET_X_RANGE,
                      y_range: Tuple[float, float] = settings.LEVELSET_Y_RANGE,
                      resolution: int = settings.LEVELSET_RESOLUTION) -> pd.DataFrame:
    """
    Contours {z : K(z, w) = level} as straight pieces of the marching-squares polylines.

    :return: DataFrame with one row per piece and columns level, x0, y0, x1, y1.
    """
    xs, ys, values = kernel_grid(spec, w, x_range, y_range, resolution)
    mask = np.isfinite(values)
    dx = xs[1] - xs[0]
    dy = ys[1] - ys[0]
    rows = []
    for level in levels:
        contours = measure.find_contours(values, float(level), mask=mask)
        for contour in contours:
            # (row, col) index coordinates -> (x, y)
            x = xs[0] + contour[:, 1] * dx
            y = ys[0] + contour[:, 0] * dy
            rows.append(np.column_stack([np.full(len(x) - 1, float(level)), x[:-1], y[:-1], x[1:], y[1:]]))
        logger.debug(f'level {level}: {len(contours)} contour(s)')
    if not rows:
        return pd.DataFrame(columns=LEVELSET_COLUMNS, dtype=float)
    return pd.DataFrame(np.concatenate(rows), columns=LEVELSET_COLUMNS)
