"""
Limit distributions of minimal energy points and distances of configurations from them.

Models:

- SegmentKInf(s, r):      equilibrium density of the limit kernel (0 < s < 1) on a segment of length 2r,
                          Gamma((1+s)/2) / (sqrt(pi) Gamma(s/2)) r^{1-s} (r^2 - T^2)^{s/2 - 1}.
- SegmentHyper(s, R, phi): hypersingular (s > 2) limit on the segment R + t e^{i phi}, |t| <= 1, with density
                          proportional to (R + t cos phi)^{1/(s-1)}.
- CircleHyper(s, R):      hypersingular limit on the unit circle centered at R > 1, density proportional to
                          ((R + cos phi) / (R + 1))^{1/(s-1)} and normalised by 2 pi F(-1/(s-1), 1/2; 1; 2/(1+R)).
- UniformCircle:          normalised arc length on a circle.
- Arcsine(r):             1 / (pi sqrt(r^2 - T^2)) on a segment of length 2r.
"""
from __future__ import annotations
import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Tuple

import numpy as np
import pandas as pd
from numpy.typing import ArrayLike, NDArray
from scipy.integrate import quad
from scipy.special import roots_jacobi

from riesz_revolution.config import settings
from riesz_revolution.exceptions import ConvergenceError, DomainError
from riesz_revolution.potential.energy import Configuration
from riesz_revolution.potential.geometry import Circle, Curve, Segment, arc_parameter
from riesz_revolution.potential.specfun import hyp2f1_with_complement, ln_gamma

logger = logging.getLogger(__name__)

_MATCH_TOL = 1e-9


class DensityModel(ABC):
    """Probability density on an interval of the model variable, with its CDF."""
    kind: str = 'density'
    rotation_invariant: bool = False

    @property
    @abstractmethod
    def domain(self) -> Tuple[float, float]:
        """Interval carrying the density."""

    @abstractmethod
    def density(self, t: ArrayLike) -> NDArray[np.float64]:
        """Density values at points of the domain."""

    @abstractmethod
    def matches(self, curve: Curve) -> bool:
        """True if the model describes points on ``curve``."""

    @abstractmethod
    def variable(self, curve: Curve, points: ArrayLike) -> NDArray[np.float64]:
        """Model variable of points lying on a matching curve."""

    def cdf(self, t: float) -> float:
        lower, _ = self.domain
        value, _ = quad(lambda u: float(self.density(u)), lower, t, epsabs=settings.CDF_ABS_TOL,
                        limit=settings.CDF_QUAD_LIMIT)
        return value


def _segment_half_length(curve: Curve) -> float:
    return 0.5 * curve.length if isinstance(curve, Segment) else float('nan')


def _centered_position(curve: Segment, points: ArrayLike) -> NDArray[np.float64]:
    return (arc_parameter(curve, points) - 0.5) * curve.length


@dataclass(frozen=True)
class SegmentKInf(DensityModel):
    s: float
    r: float
    kind = 'segment_kinf'

    def __post_init__(self):
        if not 0.0 < self.s < 1.0:
            raise DomainError(f'limit kernel segment density needs 0 < s < 1, got {self.s}')
        if not self.r > 0:
            raise DomainError(f'segment half-length must be positive, got {self.r}')

    @property
    def domain(self):
        return -self.r, self.r

    @property
    def coefficient(self) -> float:
        s = self.s
        return math.exp(ln_gamma(0.5 * (1.0 + s)) - 0.5 * math.log(math.pi) - ln_gamma(0.5 * s)) * self.r ** (1.0 - s)

    def density(self, t):
        t = np.asarray(t, dtype=float)
        return self.coefficient * (self.r * self.r - t * t) ** (0.5 * self.s - 1.0)

    def cdf(self, t):
        # algebraic endpoint weights carry the (r -/+ T)^{s/2 - 1} singularities
        exponent = 0.5 * self.s - 1.0
        r = self.r
        if t <= -r:
            return 0.0
        if t >= r:
            return 1.0
        if t <= 0:
            value, _ = quad(lambda u: self.coefficient * (r - u) ** exponent, -r, t, weight='alg',
                            wvar=(exponent, 0.0), epsabs=settings.CDF_ABS_TOL, limit=settings.CDF_QUAD_LIMIT)
            return value
        tail, _ = quad(lambda u: self.coefficient * (r + u) ** exponent, t, r, weight='alg', wvar=(0.0, exponent),
                       epsabs=settings.CDF_ABS_TOL, limit=settings.CDF_QUAD_LIMIT)
        return 1.0 - tail

    def matches(self, curve):
        return abs(_segment_half_length(curve) - self.r) <= _MATCH_TOL * max(1.0, self.r)

    def variable(self, curve, points):
        return _centered_position(curve, points)


@dataclass(frozen=True)
class Arcsine(DensityModel):
    r: float
    kind = 'arcsine'

    def __post_init__(self):
        if not self.r > 0:
            raise DomainError(f'segment half-length must be positive, got {self.r}')

    @property
    def domain(self):
        return -self.r, self.r

    def density(self, t):
        t = np.asarray(t, dtype=float)
        return 1.0 / (math.pi * np.sqrt(self.r * self.r - t * t))

    def cdf(self, t):
        return 0.5 + math.asin(min(max(t / self.r, -1.0), 1.0)) / math.pi

    def matches(self, curve):
        return abs(_segment_half_length(curve) - self.r) <= _MATCH_TOL * max(1.0, self.r)

    def variable(self, curve, points):
        return _centered_position(curve, points)


@dataclass(frozen=True)
class SegmentHyper(DensityModel):
    s: float
    R: float
    phi: float
    kind = 'segment_hyper'

    def __post_init__(self):
        if not self.s > 2.0:
            raise DomainError(f'hypersingular segment density needs s > 2, got {self.s}')
        if not 0.0 <= self.phi < math.pi:
            raise DomainError(f'segment direction must lie in [0, pi), got {self.phi}')
        if not self.R > abs(math.cos(self.phi)):
            raise DomainError(f'segment leaves the half-plane: R = {self.R}, phi = {self.phi}')

    @property
    def domain(self):
        return -1.0, 1.0

    @property
    def normaliser(self) -> float:
        c = math.cos(self.phi)
        if abs(c) < 1e-12:
            return 2.0 * self.R ** (1.0 / (self.s - 1.0))
        q = self.s / (self.s - 1.0)
        return (self.s - 1.0) / self.s * ((self.R + c) ** q - (self.R - c) ** q) / c

    def density(self, t):
        t = np.asarray(t, dtype=float)
        return (self.R + t * math.cos(self.phi)) ** (1.0 / (self.s - 1.0)) / self.normaliser

    def cdf(self, t):
        c = math.cos(self.phi)
        if abs(c) < 1e-12:
            return 0.5 * (t + 1.0)
        q = self.s / (self.s - 1.0)
        primitive = (self.s - 1.0) / self.s / c
        return primitive * ((self.R + t * c) ** q - (self.R - c) ** q) / self.normaliser

    @property
    def midpoint(self) -> NDArray[np.float64]:
        return np.array([self.R, 0.0])

    @property
    def direction(self) -> NDArray[np.float64]:
        return np.array([math.cos(self.phi), math.sin(self.phi)])

    def matches(self, curve):
        if not isinstance(curve, Segment):
            return False
        ends = {tuple(np.round(self.midpoint + sign * self.direction, 9)) for sign in (-1.0, 1.0)}
        return {tuple(np.round(curve.start.as_array(), 9)), tuple(np.round(curve.end.as_array(), 9))} == ends

    def variable(self, curve, points):
        return (np.asarray(points, dtype=float).reshape(-1, 2) - self.midpoint) @ self.direction


def _angle_about(curve: Circle, points: ArrayLike) -> NDArray[np.float64]:
    p = np.asarray(points, dtype=float).reshape(-1, 2)
    return np.arctan2(p[:, 1] - curve.center.y, p[:, 0] - curve.center.x)


@dataclass(frozen=True)
class CircleHyper(DensityModel):
    s: float
    R: float
    kind = 'circle_hyper'

    def __post_init__(self):
        if not self.s > 2.0:
            raise DomainError(f'hypersingular circle density needs s > 2, got {self.s}')
        if not self.R > 1.0:
            raise DomainError(f'unit circle must be centered at R > 1, got {self.R}')

    @property
    def domain(self):
        return -math.pi, math.pi

    @property
    def normaliser(self) -> float:
        return hyp2f1_with_complement(-1.0 / (self.s - 1.0), 0.5, 1.0, 2.0 / (1.0 + self.R),
                                      (self.R - 1.0) / (self.R + 1.0))

    def density(self, t):
        t = np.asarray(t, dtype=float)
        ratio = (self.R + np.cos(t)) / (self.R + 1.0)
        return ratio ** (1.0 / (self.s - 1.0)) / (2.0 * math.pi * self.normaliser)

    def matches(self, curve):
        return (isinstance(curve, Circle) and abs(curve.radius - 1.0) <= _MATCH_TOL
                and abs(curve.center.x - self.R) <= _MATCH_TOL and abs(curve.center.y) <= _MATCH_TOL)

    def variable(self, curve, points):
        return _angle_about(curve, points)


@dataclass(frozen=True)
class UniformCircle(DensityModel):
    kind = 'uniform_circle'
    rotation_invariant = True

    @property
    def domain(self):
        return -math.pi, math.pi

    def density(self, t):
        return np.full(np.shape(t), 1.0 / (2.0 * math.pi))

    def cdf(self, t):
        return (t + math.pi) / (2.0 * math.pi)

    def matches(self, curve):
        return isinstance(curve, Circle)

    def variable(self, curve, points):
        return _angle_about(curve, points)


def density_cdf(model: DensityModel, t: float) -> float:
    """
    Cumulative distribution of ``model`` at t, by adaptive quadrature of the density where no closed form
    is used (absolute tolerance 1e-10).

    :raises DomainError: If t lies outside the model's domain.
    """
    lower, upper = model.domain
    slack = 1e-12 * max(1.0, abs(lower), abs(upper))
    if not (lower - slack <= t <= upper + slack):
        raise DomainError(f'{model.kind} CDF needs t in [{lower}, {upper}], got {t}')
    t = min(max(t, lower), upper)
    return float(model.cdf(t))


def empirical_cdf_distance(config: Configuration, model: DensityModel, align_rotation: bool = False) -> float:
    """
    Kolmogorov distance between the configuration and the model,
    max_i max(|i/N - F(t_i)|, |(i-1)/N - F(t_i)|) over the sorted model variables t_i.

    :param align_rotation: Minimise over rotations as well (rotation-invariant models only). The optimum is
                           half the Kuiper statistic, (max(i/N - F) + max(F - (i-1)/N)) / 2.
    :raises DomainError: If the configuration's curve does not match the model.
    """
    if not model.matches(config.curve):
        raise DomainError(f'{model.kind} model does not describe points on a {config.curve.kind}')
    t = np.sort(model.variable(config.curve, config.points))
    cdf = np.array([density_cdf(model, value) for value in t])
    n = t.size
    upper = np.arange(1, n + 1) / n
    lower = np.arange(0, n) / n
    if align_rotation:
        if not model.rotation_invariant:
            raise DomainError(f'{model.kind} model is not rotation invariant')
        return float(0.5 * (np.max(upper - cdf) + np.max(cdf - lower)))
    return float(max(np.max(np.abs(upper - cdf)), np.max(np.abs(lower - cdf))))


def cdf_comparison_table(config: Configuration, model: DensityModel) -> pd.DataFrame:
    """Sorted model variables of the configuration with the empirical CDF (i/N) and the model CDF."""
    if not model.matches(config.curve):
        raise DomainError(f'{model.kind} model does not describe points on a {config.curve.kind}')
    t = np.sort(model.variable(config.curve, config.points))
    return pd.DataFrame({'t': t, 'empirical': np.arange(1, t.size + 1) / t.size,
                         'model': [density_cdf(model, value) for value in t]})


def _hilfssatz_breakpoints(y: float):
    points = {-1.0, y, 1.0}
    # geometric grading so no panel sees a singular point closer than its own length
    gap = 1.0 + y
    if gap > 0:
        x = y + gap
        while x < 1.0:
            points.add(x)
            gap *= 2.0
            x = y + gap
    gap = 1.0 - y
    if gap > 0:
        x = y - gap
        while x > -1.0:
            points.add(x)
            gap *= 2.0
            x = y - gap
    return sorted(points)


def _hilfssatz_rule(alpha: float, y: float, nodes: int) -> float:
    edge = -0.5 * (1.0 + alpha)
    breaks = _hilfssatz_breakpoints(y)
    total = 0.0
    for lo, hi in zip(breaks[:-1], breaks[1:]):
        left = (edge if lo == -1.0 else 0.0) + (alpha if lo == y else 0.0)
        right = (edge if hi == 1.0 else 0.0) + (alpha if hi == y else 0.0)
        u, w = roots_jacobi(nodes, right, left)
        half = 0.5 * (hi - lo)
        x = lo + half * (1.0 + u)
        smooth = np.ones_like(x)
        if lo != -1.0:
            smooth *= (1.0 + x) ** edge
        if hi != 1.0:
            smooth *= (1.0 - x) ** edge
        if lo != y and hi != y:
            smooth *= np.abs(x - y) ** alpha
        total += half ** (1.0 + left + right) * float(w @ smooth)
    return total


def hilfssatz_integral(alpha: float, y: float, nodes: int = settings.HILFSSATZ_NODES) -> float:
    """
    Integral of (1 - x^2)^{-(1+alpha)/2} |x - y|^alpha over [-1, 1]; equals pi / cos(pi alpha / 2) for every y.

    Composite Gauss-Jacobi rule: panels break at -1, y and 1 and are graded geometrically towards y, each
    endpoint singularity carried by the Jacobi weight.

    :param alpha: Exponent in (-1, 1) without 0.
    :param y: Point in [-1, 1].
    :param nodes: Gauss nodes per panel.
    :raises ConvergenceError: If doubling the nodes changes the value by more than 1e-10 relative.
    """
    if not (-1.0 < alpha < 1.0) or alpha == 0:
        raise DomainError(f'exponent must lie in (-1, 1) without 0, got {alpha}')
    if not -1.0 <= y <= 1.0:
        raise DomainError(f'y must lie in [-1, 1], got {y}')
    if nodes < 2:
        raise DomainError(f'need at least two nodes per panel, got {nodes}')
    coarse = _hilfssatz_rule(alpha, y, nodes)
    fine = _hilfssatz_rule(alpha, y, 2 * nodes)
    if abs(fine - coarse) > 1e-10 * abs(fine):
        raise ConvergenceError(f'composite Gauss-Jacobi rule did not settle: {coarse} vs {fine}')
    return fine
