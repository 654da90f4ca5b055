"""
Parametrised curves in the right half-plane and the lift to the surface of revolution.

Every curve maps the normalised parameter t in [0, 1] to a half-plane point. Closed curves map t = 0 and
t = 1 to the same point and accept parameters outside [0, 1] through :func:`curve_points` (wrapped mod 1).
"""
from __future__ import annotations
import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, Tuple

import numpy as np
import shapely
from numpy.typing import ArrayLike, NDArray
from shapely.geometry import LineString

from riesz_revolution.config import settings
from riesz_revolution.exceptions import DomainError, GeometryError
from riesz_revolution.potential.kernel import HalfPlanePoint, PointLike, as_half_plane_point

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SurfacePoint3:
    """Cartesian point in 3-space; the third coordinate runs along the rotation axis."""
    x1: float
    x2: float
    x3: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.x1, self.x2, self.x3)):
            raise DomainError(f'surface point needs finite coordinates, got ({self.x1}, {self.x2}, {self.x3})')

    def as_array(self) -> NDArray[np.float64]:
        return np.array([self.x1, self.x2, self.x3])


class Curve(ABC):
    """Base class of the curves carrying point configurations."""
    kind: str = 'curve'
    closed: bool = False

    @abstractmethod
    def _evaluate(self, t: NDArray[np.float64]) -> NDArray[np.float64]:
        """Points for parameters already mapped into [0, 1]; returns shape t.shape + (2,)."""

    def _check_containment(self):
        t = np.linspace(0.0, 1.0, settings.CONTAINMENT_SAMPLES)
        points = self._evaluate(t)
        if not np.all(np.isfinite(points)):
            raise GeometryError(f'{self.kind} produced non-finite points')
        min_x = float(points[:, 0].min())
        if min_x < 0:
            raise GeometryError(f'{self.kind} leaves the right half-plane (min x = {min_x:.6g})')

    def to_dict(self) -> Dict[str, Any]:
        raise NotImplementedError


@dataclass(frozen=True)
class Segment(Curve):
    start: HalfPlanePoint
    end: HalfPlanePoint
    kind: str = field(default='segment', init=False)
    closed: bool = field(default=False, init=False)

    def __post_init__(self):
        object.__setattr__(self, 'start', as_half_plane_point(self.start))
        object.__setattr__(self, 'end', as_half_plane_point(self.end))
        if self.start == self.end:
            raise GeometryError('segment end points coincide')
        self._check_containment()

    def _evaluate(self, t):
        a = self.start.as_array()
        b = self.end.as_array()
        return a + np.multiply.outer(t, b - a)

    @property
    def length(self) -> float:
        return math.hypot(self.end.x - self.start.x, self.end.y - self.start.y)

    def to_dict(self):
        return {'kind': self.kind, 'start': [self.start.x, self.start.y], 'end': [self.end.x, self.end.y]}


@dataclass(frozen=True)
class Circle(Curve):
    """Circle traversed counter-clockwise from its rightmost point; ``strict`` requires center.x > radius."""
    center: HalfPlanePoint
    radius: float
    strict: bool = False
    kind: str = field(default='circle', init=False)
    closed: bool = field(default=True, init=False)

    def __post_init__(self):
        object.__setattr__(self, 'center', as_half_plane_point(self.center))
        if not (math.isfinite(self.radius) and self.radius > 0):
            raise GeometryError(f'circle radius must be positive, got {self.radius}')
        object.__setattr__(self, 'radius', float(self.radius))
        if self.strict and not self.center.x > self.radius:
            raise GeometryError(f'circle is not strictly inside the half-plane: center.x = {self.center.x}, '
                                f'radius = {self.radius}')
        self._check_containment()

    def _evaluate(self, t):
        angle = 2.0 * math.pi * t
        return np.stack([self.center.x + self.radius * np.cos(angle),
                         self.center.y + self.radius * np.sin(angle)], axis=-1)

    def to_dict(self):
        return {'kind': self.kind, 'center': [self.center.x, self.center.y], 'radius': self.radius,
                'strict': self.strict}


@dataclass(frozen=True)
class CircularArc(Curve):
    """Open arc of a circle from ``start_angle`` to ``end_angle`` (radians, either orientation)."""
    center: HalfPlanePoint
    radius: float
    start_angle: float
    end_angle: float
    kind: str = field(default='arc', init=False)
    closed: bool = field(default=False, init=False)

    def __post_init__(self):
        object.__setattr__(self, 'center', as_half_plane_point(self.center))
        if not (math.isfinite(self.radius) and self.radius > 0):
            raise GeometryError(f'arc radius must be positive, got {self.radius}')
        sweep = abs(self.end_angle - self.start_angle)
        if not (0 < sweep < 2.0 * math.pi):
            raise GeometryError(f'arc sweep must lie in (0, 2 pi), got {sweep}')
        self._check_containment()

    def _evaluate(self, t):
        angle = self.start_angle + t * (self.end_angle - self.start_angle)
        return np.stack([self.center.x + self.radius * np.cos(angle),
                         self.center.y + self.radius * np.sin(angle)], axis=-1)

    def to_dict(self):
        return {'kind': self.kind, 'center': [self.center.x, self.center.y], 'radius': self.radius,
                'start_angle': self.start_angle, 'end_angle': self.end_angle}


def cassini_translate(a: float = settings.CASSINI_A, b: float = settings.CASSINI_B,
                      min_x: float = settings.CASSINI_MIN_X) -> float:
    """
    Horizontal shift of the oval |z^2 - a^2| = b^2 that puts its leftmost point at ``min_x``.

    For b >= a the leftmost point of the full oval is at -sqrt(a^2 + b^2); for b < a the right loop
    starts at sqrt(a^2 - b^2).
    """
    if not (a > 0 and b > 0):
        raise GeometryError(f'Cassinian oval needs a > 0 and b > 0, got a = {a}, b = {b}')
    if b >= a:
        translate = min_x + math.sqrt(a * a + b * b)
    else:
        translate = min_x - math.sqrt(a * a - b * b)
    if translate < 0:
        raise DomainError(f'no translate >= 0 puts the Cassinian loop at min x = {min_x}')
    return translate


@dataclass(frozen=True)
class CassinianOval(Curve):
    """
    Cassinian oval |z^2 - a^2| = b^2 shifted right by ``translate``, sampled by polar angle about its center.

    For b >= a the whole oval is traversed with angle 2 pi t. For b < a the curve splits into two loops and
    only the right one is used: the outer branch for t in [0, 1/2], then the inner branch back.
    """
    a: float
    b: float
    translate: float
    kind: str = field(default='cassini', init=False)
    closed: bool = field(default=True, init=False)

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0):
            raise GeometryError(f'Cassinian oval needs a > 0 and b > 0, got a = {self.a}, b = {self.b}')
        if not self.translate >= 0:
            raise GeometryError(f'Cassinian oval needs translate >= 0, got {self.translate}')
        self._check_containment()

    @property
    def single_loop(self) -> bool:
        return self.b < self.a

    def _radius_squared(self, theta, sign):
        a2 = self.a * self.a
        root = np.sqrt(np.maximum(self.b ** 4 - a2 * a2 * np.sin(2.0 * theta) ** 2, 0.0))
        return np.maximum(a2 * np.cos(2.0 * theta) + sign * root, 0.0)

    def _evaluate(self, t):
        if not self.single_loop:
            theta = 2.0 * math.pi * t
            r = np.sqrt(self._radius_squared(theta, 1.0))
        else:
            theta_max = 0.5 * math.asin((self.b / self.a) ** 2)
            outer = t <= 0.5
            theta = np.where(outer, -theta_max + 4.0 * theta_max * t, theta_max - 4.0 * theta_max * (t - 0.5))
            r = np.sqrt(np.where(outer, self._radius_squared(theta, 1.0), self._radius_squared(theta, -1.0)))
        return np.stack([self.translate + r * np.cos(theta), r * np.sin(theta)], axis=-1)

    def to_dict(self):
        return {'kind': self.kind, 'a': self.a, 'b': self.b, 'translate': self.translate}


class _ShapelyPath(Curve):
    """Arc-length proportional traversal of a shapely line."""

    @property
    @abstractmethod
    def line(self) -> LineString:
        """The traversed line."""

    def _evaluate(self, t):
        t = np.asarray(t, dtype=float)
        points = shapely.line_interpolate_point(self.line, t.ravel(), normalized=True)
        return shapely.get_coordinates(points).reshape(t.shape + (2,))


@dataclass(frozen=True)
class RectangleBoundary(_ShapelyPath):
    """Rectangle boundary traversed counter-clockwise from its lower-left corner."""
    lower_left: HalfPlanePoint
    upper_right: HalfPlanePoint
    kind: str = field(default='rectangle', init=False)
    closed: bool = field(default=True, init=False)

    def __post_init__(self):
        object.__setattr__(self, 'lower_left', as_half_plane_point(self.lower_left))
        object.__setattr__(self, 'upper_right', as_half_plane_point(self.upper_right))
        if not (self.upper_right.x > self.lower_left.x and self.upper_right.y > self.lower_left.y):
            raise GeometryError('rectangle corners must be lower-left and upper-right')
        self._check_containment()

    @property
    def line(self) -> LineString:
        x0, y0 = self.lower_left.x, self.lower_left.y
        x1, y1 = self.upper_right.x, self.upper_right.y
        return LineString([(x0, y0), (x1, y0), (x1, y1), (x0, y1), (x0, y0)])

    def to_dict(self):
        return {'kind': self.kind, 'lower_left': [self.lower_left.x, self.lower_left.y],
                'upper_right': [self.upper_right.x, self.upper_right.y]}


@dataclass(frozen=True)
class Polyline(_ShapelyPath):
    vertices: Tuple[HalfPlanePoint, ...]
    kind: str = field(default='polyline', init=False)
    closed: bool = field(default=False, init=False)

    def __post_init__(self):
        vertices = tuple(as_half_plane_point(v) for v in self.vertices)
        if len(vertices) < 2:
            raise GeometryError('polyline needs at least two vertices')
        object.__setattr__(self, 'vertices', vertices)
        if not self.line.length > 0:
            raise GeometryError('polyline has zero length')
        self._check_containment()

    @property
    def line(self) -> LineString:
        return LineString([(v.x, v.y) for v in self.vertices])

    def to_dict(self):
        return {'kind': self.kind, 'vertices': [[v.x, v.y] for v in self.vertices]}


def curve_points(curve: Curve, t: ArrayLike) -> NDArray[np.float64]:
    """
    Vectorised curve evaluation.

    :param curve: The curve.
    :param t: Parameters; closed curves wrap them mod 1, open curves require t in [0, 1].
    :return: Array of shape t.shape + (2,).
    :raises DomainError: For parameters outside [0, 1] on an open curve.
    """
    t = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(t)):
        raise DomainError('curve parameters must be finite')
    if curve.closed:
        t = np.mod(t, 1.0)
    elif np.any((t < 0) | (t > 1)):
        raise DomainError(f'parameter outside [0, 1] on open {curve.kind}')
    return curve._evaluate(t)


def curve_point(curve: Curve, t: float) -> HalfPlanePoint:
    """
    Point of ``curve`` at parameter t in [0, 1].

    :raises DomainError: If t is not in [0, 1].
    :raises GeometryError: If the point leaves the half-plane.
    """
    if not 0.0 <= t <= 1.0:
        raise DomainError(f'curve parameter must lie in [0, 1], got {t}')
    x, y = curve_points(curve, t)
    if x < 0:
        raise GeometryError(f'{curve.kind} point at t = {t} has x = {x} < 0')
    return HalfPlanePoint(x, y)


def arc_parameter(curve: Curve, points: ArrayLike) -> NDArray[np.float64]:
    """Inverse of the parametrisation for segments, circles and arcs (points assumed on the curve)."""
    p = np.asarray(points, dtype=float).reshape(-1, 2)
    if isinstance(curve, Segment):
        a = curve.start.as_array()
        direction = curve.end.as_array() - a
        return np.clip((p - a) @ direction / (direction @ direction), 0.0, 1.0)
    if isinstance(curve, (Circle, CircularArc)):
        angle = np.arctan2(p[:, 1] - curve.center.y, p[:, 0] - curve.center.x)
        if isinstance(curve, Circle):
            return np.mod(angle / (2.0 * math.pi), 1.0)
        sweep = curve.end_angle - curve.start_angle
        # bring the angle into the branch closest to the arc midpoint
        mid = curve.start_angle + 0.5 * sweep
        angle = mid + np.mod(angle - mid + math.pi, 2.0 * math.pi) - math.pi
        return np.clip((angle - curve.start_angle) / sweep, 0.0, 1.0)
    raise DomainError(f'no inverse parametrisation for {curve.kind}')


def lift_to_3d(z: PointLike, phi: float) -> SurfacePoint3:
    """Rotate the half-plane point z by the angle phi about the axis: (x cos phi, x sin phi, y)."""
    z = as_half_plane_point(z)
    return SurfacePoint3(z.x * math.cos(phi), z.x * math.sin(phi), z.y)


def ring_points(z: PointLike, rings: int) -> NDArray[np.float64]:
    """The M lifted copies lift_to_3d(z, 2 pi k / M), k = 0..M-1, as an (M, 3) array."""
    if rings < 1:
        raise DomainError(f'a ring needs at least one point, got {rings}')
    z = as_half_plane_point(z)
    phi = 2.0 * math.pi * np.arange(rings) / rings
    return np.stack([z.x * np.cos(phi), z.x * np.sin(phi), np.full(rings, z.y)], axis=-1)


def curve_from_dict(definition: Dict[str, Any]) -> Curve:
    """
    Build a curve from its experiment-file description, e.g. ``{'kind': 'circle', 'center': [1.5, 0],
    'radius': 1}``. A Cassinian oval without ``translate`` is placed with :func:`cassini_translate`.
    """
    definition = dict(definition)
    kind = definition.pop('kind', None)
    if kind == 'segment':
        return Segment(tuple(definition['start']), tuple(definition['end']))
    if kind == 'circle':
        return Circle(tuple(definition['center']), definition['radius'], definition.get('strict', False))
    if kind == 'arc':
        return CircularArc(tuple(definition['center']), definition['radius'], definition['start_angle'],
                           definition['end_angle'])
    if kind == 'cassini':
        a = definition.get('a', settings.CASSINI_A)
        b = definition.get('b', settings.CASSINI_B)
        translate = definition.get('translate')
        if translate is None:
            translate = cassini_translate(a, b, definition.get('min_x', settings.CASSINI_MIN_X))
        return CassinianOval(a, b, translate)
    if kind == 'rectangle':
        return RectangleBoundary(tuple(definition['lower_left']), tuple(definition['upper_right']))
    if kind == 'polyline':
        return Polyline(tuple(tuple(v) for v in definition['vertices']))
    raise GeometryError(f'unknown curve kind: {kind}')

