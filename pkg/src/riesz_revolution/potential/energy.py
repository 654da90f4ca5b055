"""
Discrete K-energies of point configurations on a curve, their gradients in the curve parameters and the
3-D Riesz energy of the lifted rings used to cross-check them.
"""
from __future__ import annotations
import logging
import math
from dataclasses import asdict, dataclass
from typing import List, Sequence, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.spatial.distance import pdist

from riesz_revolution.config.data_formats import energy_report_format
from riesz_revolution.exceptions import DomainError, GeometryError, SingularityError
from riesz_revolution.potential.geometry import Curve, SurfacePoint3, curve_points, ring_points
from riesz_revolution.potential.kernel import (HalfPlanePoint, KernelSpec, PointLike, as_half_plane_point,
                                               kernel_pairs)

logger = logging.getLogger(__name__)

_EPS_CBRT = np.cbrt(np.finfo(float).eps)


@dataclass(frozen=True, eq=False)
class Configuration:
    """
    N points on a curve, stored by their sorted parameters and the cached half-plane points.

    Build instances with :meth:`from_params`; the arrays are read-only.
    """
    curve: Curve
    params: NDArray[np.float64]
    points: NDArray[np.float64]

    @classmethod
    def from_params(cls, curve: Curve, params: ArrayLike) -> Configuration:
        """
        :param curve: Curve carrying the points.
        :param params: At least two parameters; closed curves reduce them mod 1, open curves need [0, 1].
        :raises DomainError: For fewer than two points or parameters outside [0, 1] on an open curve.
        """
        params = np.array(params, dtype=float).ravel()
        if params.size < 2:
            raise DomainError(f'a configuration needs at least two points, got {params.size}')
        if curve.closed:
            params = np.mod(params, 1.0)
        params = np.sort(params)
        points = curve_points(curve, params)
        if np.any(points[:, 0] < 0):
            raise GeometryError('configuration point outside the half-plane')
        params.setflags(write=False)
        points.setflags(write=False)
        return cls(curve, params, points)

    @property
    def n(self) -> int:
        return int(self.params.size)

    @property
    def half_plane_points(self) -> List[HalfPlanePoint]:
        return [HalfPlanePoint(x, y) for x, y in self.points]


@dataclass(frozen=True)
class EnergyReport:
    energy: float
    gradient_sup_norm: float
    separation: float
    iterations: int
    restarts_used: int
    converged: bool

    def to_dict(self) -> energy_report_format:
        return asdict(self)


def _ordered_pairs(n: int):
    # row-major over j != k
    return np.nonzero(~np.eye(n, dtype=bool))


def discrete_energy(spec: KernelSpec, config: Configuration) -> float:
    """
    N-point K-energy, the sum of the kernel over all ordered pairs j != k.

    The N(N-1) pairs are evaluated in one vectorised kernel call and reduced in a fixed order.

    :raises SingularityError: On coincident points for a kernel singular on the diagonal.
    """
    rows, cols = _ordered_pairs(config.n)
    values = kernel_pairs(spec, config.points[rows], config.points[cols])
    return float(np.sum(values))


def pair_energy_sum(spec: KernelSpec, config: Configuration) -> float:
    """Twice the kernel sum over unordered pairs j < k; equals :func:`discrete_energy` for symmetric kernels."""
    rows, cols = np.triu_indices(config.n, k=1)
    return 2.0 * float(np.sum(kernel_pairs(spec, config.points[rows], config.points[cols])))


def _point_array(points: Union[Configuration, Sequence[PointLike]]) -> NDArray[np.float64]:
    if isinstance(points, Configuration):
        return np.asarray(points.points)
    return np.array([as_half_plane_point(p).as_array() for p in points]).reshape(-1, 2)


def discrete_potential(spec: KernelSpec, points: Union[Configuration, Sequence[PointLike]], z: PointLike) -> float:
    """
    Discrete potential (1/N) sum_k K(z, z_k) of the configuration at z.

    :param points: A configuration or any non-empty sequence of half-plane points.
    """
    support = _point_array(points)
    if support.shape[0] == 0:
        raise DomainError('potential of an empty point set')
    z = as_half_plane_point(z).as_array()
    values = kernel_pairs(spec, np.broadcast_to(z, support.shape), support)
    return float(np.mean(values))


def support_potentials(spec: KernelSpec, config: Configuration) -> NDArray[np.float64]:
    """Potential at each configuration point generated by the other N - 1 points."""
    rows, cols = _ordered_pairs(config.n)
    values = kernel_pairs(spec, config.points[rows], config.points[cols]).reshape(config.n, config.n - 1)
    return values.mean(axis=1)


def potential_spread(spec: KernelSpec, config: Configuration) -> float:
    """Maximum minus minimum of the discrete potential over the support points."""
    potentials = support_potentials(spec, config)
    return float(potentials.max() - potentials.min())


def _gradient_steps(curve: Curve, params: NDArray[np.float64]):
    h = _EPS_CBRT * np.maximum(1.0, np.abs(params))
    forward = h.copy()
    backward = h.copy()
    n = params.size

    right_gap = np.empty(n)
    left_gap = np.empty(n)
    right_gap[:-1] = np.diff(params)
    left_gap[1:] = np.diff(params)
    if curve.closed:
        right_gap[-1] = params[0] + 1.0 - params[-1]
        left_gap[0] = right_gap[-1]
    else:
        right_gap[-1] = np.inf
        left_gap[0] = np.inf
        forward[params + h > 1.0] = 0.0
        backward[params - h < 0.0] = 0.0

    blocked_right = right_gap < 2.0 * h
    blocked_left = left_gap < 2.0 * h
    # one-sided away from a close neighbour
    only_right = blocked_right & ~blocked_left & (backward > 0)
    only_left = blocked_left & ~blocked_right & (forward > 0)
    forward[only_right] = 0.0
    backward[only_left] = 0.0
    squeezed = blocked_right & blocked_left
    if np.any(squeezed):
        room = 0.25 * np.minimum(left_gap[squeezed], right_gap[squeezed])
        room = np.where(room > 0, room, h[squeezed])
        forward[squeezed] = np.where(forward[squeezed] > 0, room, 0.0)
        backward[squeezed] = np.where(backward[squeezed] > 0, room, 0.0)
    # no step reaches past half the gap to a neighbour
    forward = np.where(right_gap > 0, np.minimum(forward, 0.5 * right_gap), forward)
    backward = np.where(left_gap > 0, np.minimum(backward, 0.5 * left_gap), backward)
    return forward, backward


def energy_gradient(spec: KernelSpec, config: Configuration) -> NDArray[np.float64]:
    """
    Derivative of :func:`discrete_energy` with respect to each parameter by finite differences.

    The step is h_i = cbrt(eps) max(1, |t_i|) on both sides; closed curves wrap mod 1. Near the ends of an
    open curve, or when a neighbour is closer than 2h, the difference becomes one-sided. No step is longer
    than half the gap to the neighbour on its side.

    :return: Array of N partial derivatives.
    """
    return parameter_gradient(spec, config.curve, config.params)


def parameter_energy(spec: KernelSpec, curve: Curve, params: NDArray[np.float64]) -> float:
    """Energy of the points at ``params``; closed curves accept unwrapped parameters."""
    rows, cols = _ordered_pairs(params.size)
    points = curve_points(curve, params)
    return float(np.sum(kernel_pairs(spec, points[rows], points[cols])))


def parameter_gradient(spec: KernelSpec, curve: Curve, params: NDArray[np.float64]) -> NDArray[np.float64]:
    """
    Gradient of :func:`parameter_energy` for ascending ``params``; on closed curves they may be unwrapped
    as long as their span does not exceed 1.
    """
    n = params.size
    params = np.asarray(params, dtype=float)
    forward, backward = _gradient_steps(curve, params)
    rows, cols = _ordered_pairs(n)
    others = curve_points(curve, params)[cols]

    def row_sums(offsets):
        moved = curve_points(curve, params + offsets)
        return kernel_pairs(spec, moved[rows], others).reshape(n, n - 1).sum(axis=1)

    return 2.0 * (row_sums(forward) - row_sums(-backward)) / (forward + backward)


def separation_radius(config: Configuration) -> float:
    """Smallest pairwise Euclidean distance between the configuration points."""
    return float(pdist(config.points).min())


def riesz_energy_3d(s: float, points: Union[Sequence[SurfacePoint3], ArrayLike]) -> float:
    """
    Riesz s-energy sum_{j != k} |x_j - x_k|^{-s} of points in 3-space.

    :raises SingularityError: On coincident points.
    """
    if not s > 0:
        raise DomainError(f'Riesz energy needs s > 0, got {s}')
    if len(points) and isinstance(points[0], SurfacePoint3):
        coordinates = np.array([p.as_array() for p in points])
    else:
        coordinates = np.asarray(points, dtype=float).reshape(-1, 3)
    distances = pdist(coordinates)
    if np.any(distances == 0):
        raise SingularityError('coincident points in the 3-D configuration')
    return 2.0 * float(np.sum(distances ** -s))


def ring_discretized_energy(s: float, config: Configuration, rings: int) -> float:
    """
    Reduced energy rebuilt from the lifted rings: (E_3 - self-ring terms) / M^2.

    Each configuration point is lifted to M points on its circle of revolution; removing the interaction of
    every ring with itself and dividing by M^2 leaves the ring average of the cross terms, which tends to
    discrete_energy(ks) as M grows.
    """
    points = config.points
    if np.any(points[:, 0] == 0):
        raise DomainError('points on the rotation axis do not lift to rings')
    lifted = np.concatenate([ring_points((x, y), rings) for x, y in points])
    total = riesz_energy_3d(s, lifted)
    chords = 2.0 * np.sin(math.pi * np.arange(1, rings) / rings)
    self_terms = rings * np.sum(chords ** -s) * np.sum(points[:, 0] ** -s)
    return (total - self_terms) / rings ** 2


def equispaced_params(curve: Curve, n: int, phase: float = 0.0) -> NDArray[np.float64]:
    """n equally spaced parameters: k/n + phase on closed curves, the n-point grid of [0, 1] on open ones."""
    if n < 2:
        raise DomainError(f'need at least two points, got {n}')
    if curve.closed:
        return np.arange(n) / n + phase
    return np.linspace(0.0, 1.0, n)
