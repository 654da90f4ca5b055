"""
Reduced Riesz kernels on the closed right half-plane.

A point z = x + iy of the half-plane stands for the circle of radius x at height y that it sweeps when
revolved about the vertical axis. The reduced kernel is the average of the Riesz s-kernel over that
circle::

    K_s(z, w) = 1/(2 pi) int |R_phi z - w|^{-s} dphi

Evaluation uses the hypergeometric closed forms with the distances d = |z - w| and D = |z - w*|, where
w* = -u + iv is the reflection of w in the rotation axis. Variants:

- ``ks``:    K_s itself, any s > 0 (s = 1 is the elliptic kernel).
- ``ksr``:   translated and rescaled kernel 2R[K_s(R+z, R+w) - I_s R^{-s}] (s < 1) or 2R K_s(R+z, R+w) (s > 1).
- ``ksinf``: the R -> infinity limit Gamma((s-1)/2) / (sqrt(pi) Gamma(s/2)) |z - w|^{1-s}.
- ``k0``:    logarithmic kernel log(2 / (d + D)).
- ``k1``:    elliptic kernel (2/pi) (2/(D + d)) K(((D - d)/(D + d))^2).
"""
from __future__ import annotations
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Tuple, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

from riesz_revolution.exceptions import CrossCheckError, DomainError, SingularityError
from riesz_revolution.potential.specfun import (elliptic_k_complement, hyp2f1_with_complement, ln_gamma,
                                                gamma)

logger = logging.getLogger(__name__)


class KernelVariant(str, Enum):
    KS = 'ks'
    KSR = 'ksr'
    KSINF = 'ksinf'
    K0 = 'k0'
    K1 = 'k1'


@dataclass(frozen=True)
class PlanePoint:
    """A point of the plane; reflections of half-plane points live here."""
    x: float
    y: float

    def __post_init__(self):
        object.__setattr__(self, 'x', float(self.x))
        object.__setattr__(self, 'y', float(self.y))

    def as_array(self) -> NDArray[np.float64]:
        return np.array([self.x, self.y])


@dataclass(frozen=True)
class HalfPlanePoint(PlanePoint):
    """A point x + iy of the closed right half-plane; x is the distance from the rotation axis."""

    def __post_init__(self):
        super().__post_init__()
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise DomainError(f'half-plane point needs finite coordinates, got ({self.x}, {self.y})')
        if self.x < 0:
            raise DomainError(f'half-plane point needs x >= 0, got x = {self.x}')


PointLike = Union[HalfPlanePoint, Tuple[float, float], Sequence[float]]


def as_half_plane_point(point: PointLike) -> HalfPlanePoint:
    if isinstance(point, HalfPlanePoint):
        return point
    x, y = point
    return HalfPlanePoint(x, y)


def reflect(w: PlanePoint) -> PlanePoint:
    """Reflection w* = -u + iv of w = u + iv in the rotation axis."""
    return PlanePoint(-w.x, w.y)


@dataclass(frozen=True)
class KernelSpec:
    """
    Kernel variant and its parameters.

    ``s`` is required for ``ks``, ``ksr`` and ``ksinf`` and must be left out for ``k0`` and ``k1``;
    ``R`` is required for ``ksr`` only.
    """
    variant: KernelVariant
    s: Optional[float] = None
    R: Optional[float] = None

    def __post_init__(self):
        try:
            variant = KernelVariant(self.variant)
        except ValueError:
            raise DomainError(f'unknown kernel variant: {self.variant}')
        object.__setattr__(self, 'variant', variant)

        if variant in (KernelVariant.KS, KernelVariant.KSR, KernelVariant.KSINF):
            if self.s is None or not math.isfinite(self.s) or not self.s > 0:
                raise DomainError(f'kernel {variant.value} needs an exponent s > 0, got {self.s}')
            object.__setattr__(self, 's', float(self.s))
            if variant is not KernelVariant.KS and self.s == 1.0:
                raise DomainError(f'kernel {variant.value} is not defined for s = 1')
        elif self.s is not None:
            raise DomainError(f'kernel {variant.value} takes no exponent s')

        if variant is KernelVariant.KSR:
            if self.R is None or not math.isfinite(self.R) or not self.R > 0:
                raise DomainError(f'kernel ksr needs a translation R > 0, got {self.R}')
            object.__setattr__(self, 'R', float(self.R))
        elif self.R is not None:
            raise DomainError(f'kernel {variant.value} takes no translation R')

    @property
    def effective_s(self) -> float:
        """Riesz exponent the kernel behaves like near its diagonal (0 for k0, 1 for k1)."""
        if self.variant is KernelVariant.K0:
            return 0.0
        if self.variant is KernelVariant.K1:
            return 1.0
        return self.s

    @property
    def singular_diagonal(self) -> bool:
        """True if the kernel is infinite on the diagonal z = w (away from the axis)."""
        if self.variant is KernelVariant.K0:
            return False
        if self.variant is KernelVariant.K1:
            return True
        if self.variant is KernelVariant.KS:
            return self.s >= 1.0
        return self.s > 1.0

    @property
    def rotation_invariant(self) -> bool:
        """True if the kernel depends on |z - w| only."""
        return self.variant is KernelVariant.KSINF

    def to_dict(self) -> dict:
        data = {'variant': self.variant.value, 's': self.s, 'R': self.R}
        return {key: value for key, value in data.items() if value is not None}


@dataclass(frozen=True)
class ExpansionTerms:
    """The three displayed terms of the large-R expansion of K_s(R + z, R + w), 0 < s < 1."""
    leading: float
    infinity_term: float
    drift_term: float

    @property
    def total(self) -> float:
        return self.leading + self.infinity_term + self.drift_term


def _as_array(points: ArrayLike) -> NDArray[np.float64]:
    arr = np.asarray(points, dtype=float)
    if arr.shape[-1] != 2:
        raise DomainError(f'points must have two coordinates, got shape {arr.shape}')
    return arr


def _distances(z: NDArray, w: NDArray) -> Tuple[NDArray, NDArray, NDArray]:
    dx = z[..., 0] - w[..., 0]
    dy = z[..., 1] - w[..., 1]
    sx = z[..., 0] + w[..., 0]
    dy2 = dy * dy
    return dx * dx + dy2, sx * sx + dy2, z[..., 0] * w[..., 0]


def i_s_circle(s: float) -> float:
    """
    Diagonal constant I_s = Gamma(1 - s) / Gamma(1 - s/2)^2 of the reduced kernel, K_s(w, w) = I_s u^{-s}.

    The duplication-formula form 2^{-s} Gamma((1-s)/2) / (sqrt(pi) Gamma(1 - s/2)) is evaluated as well
    and both must agree to 1e-12.

    :param s: Exponent in (0, 1).
    :raises DomainError: For s outside (0, 1).
    :raises CrossCheckError: If the two forms disagree.
    """
    if not (0.0 < s < 1.0):
        raise DomainError(f'I_s is defined for 0 < s < 1, got {s}')
    value = math.exp(ln_gamma(1.0 - s) - 2.0 * ln_gamma(1.0 - 0.5 * s))
    alternate = math.exp(-s * math.log(2.0) + ln_gamma(0.5 * (1.0 - s)) - 0.5 * math.log(math.pi)
                         - ln_gamma(1.0 - 0.5 * s))
    if abs(value - alternate) > 1e-12 * abs(value):
        raise CrossCheckError(f'I_s forms disagree at s = {s}: {value} vs {alternate}')
    return value


def infinity_coefficient(s: float) -> float:
    """Coefficient Gamma((s-1)/2) / (sqrt(pi) Gamma(s/2)) of the limit kernel; negative for s < 1."""
    if not s > 0 or s == 1.0:
        raise DomainError(f'limit kernel coefficient needs s in (0, 1) or s > 1, got {s}')
    return gamma(0.5 * (s - 1.0)) / (math.sqrt(math.pi) * gamma(0.5 * s))


def _elliptic_values(d2: NDArray, D2: NDArray) -> NDArray:
    if np.any(d2 == 0):
        raise SingularityError('elliptic kernel is singular on the diagonal')
    d = np.sqrt(d2)
    D = np.sqrt(D2)
    k_prime = np.minimum(2.0 * np.sqrt(d * D) / (D + d), 1.0)
    return (2.0 / math.pi) * (2.0 / (D + d)) * elliptic_k_complement(k_prime)


def _riesz_values(s: float, z: NDArray, w: NDArray) -> NDArray:
    d2, D2, xu = _distances(z, w)
    if s == 1.0:
        return _elliptic_values(d2, D2)

    out = np.empty(d2.shape)
    diag = d2 == 0
    if s < 1.0:
        if np.any(diag):
            x = z[..., 0][diag]
            if np.any(x == 0):
                raise SingularityError('reduced kernel is singular at a diagonal point on the axis')
            out[diag] = i_s_circle(s) * x ** -s
        rest = ~diag
        axis = rest & (xu == 0)
        out[axis] = d2[axis] ** (-0.5 * s)
        general = rest & ~axis
        if np.any(general):
            zeta = np.minimum(4.0 * xu[general] / D2[general], 1.0)
            out[general] = D2[general] ** (-0.5 * s) * hyp2f1_with_complement(
                0.5 * s, 0.5, 1.0, zeta, d2[general] / D2[general])
        return out

    if np.any(diag):
        raise SingularityError(f'reduced kernel with s = {s} is singular on the diagonal')
    zeta = np.minimum(4.0 * xu / D2, 1.0)
    factor = hyp2f1_with_complement(1.0 - 0.5 * s, 0.5, 1.0, zeta, d2 / D2)
    return d2 ** (0.5 * (1.0 - s)) / np.sqrt(D2) * factor


def kernel_pairs(spec: KernelSpec, z: ArrayLike, w: ArrayLike) -> NDArray[np.float64]:
    """
    Vectorised kernel evaluation on pairs (z[i], w[i]).

    :param spec: Kernel to evaluate.
    :param z: Array of shape (..., 2) of half-plane points.
    :param w: Array of the same shape.
    :return: Array of kernel values of shape z.shape[:-1].
    :raises SingularityError: If a pair lies on the diagonal of a singular kernel.
    """
    z = _as_array(z)
    w = _as_array(w)
    if spec.variant is KernelVariant.KS:
        values = _riesz_values(spec.s, z, w)
    elif spec.variant is KernelVariant.KSR:
        shift = np.array([spec.R, 0.0])
        values = _riesz_values(spec.s, z + shift, w + shift)
        if spec.s < 1.0:
            values = 2.0 * spec.R * (values - i_s_circle(spec.s) * spec.R ** -spec.s)
        else:
            values = 2.0 * spec.R * values
    elif spec.variant is KernelVariant.KSINF:
        d2, _, _ = _distances(z, w)
        if spec.s > 1.0 and np.any(d2 == 0):
            raise SingularityError(f'limit kernel with s = {spec.s} is singular on the diagonal')
        values = infinity_coefficient(spec.s) * d2 ** (0.5 * (1.0 - spec.s))
    elif spec.variant is KernelVariant.K0:
        d2, D2, _ = _distances(z, w)
        total = np.sqrt(d2) + np.sqrt(D2)
        if np.any(total == 0):
            raise SingularityError('logarithmic kernel is singular at a diagonal point on the axis')
        values = np.log(2.0 / total)
    else:
        d2, D2, _ = _distances(z, w)
        values = _elliptic_values(d2, D2)

    if not np.all(np.isfinite(values)):
        raise SingularityError(f'kernel {spec.variant.value} produced a non-finite value')
    return values


def kernel_matrix(spec: KernelSpec, points_a: ArrayLike, points_b: ArrayLike) -> NDArray[np.float64]:
    """Kernel values between every point of ``points_a`` (rows) and every point of ``points_b`` (columns)."""
    a = _as_array(points_a).reshape(-1, 2)
    b = _as_array(points_b).reshape(-1, 2)
    za = np.repeat(a[:, None, :], b.shape[0], axis=1)
    wb = np.repeat(b[None, :, :], a.shape[0], axis=0)
    return kernel_pairs(spec, za, wb)


def kernel_eval(spec: KernelSpec, z: PointLike, w: PointLike) -> float:
    """
    Value of the reduced kernel selected by ``spec`` at the pair (z, w).

    The distance expressions are symmetric, so kernel_eval(spec, z, w) == kernel_eval(spec, w, z).

    :raises SingularityError: On the diagonal of a singular kernel (ks with s >= 1, ksr and ksinf with
                              s > 1, k1) or on the axis diagonal of ks (s < 1) and k0.
    """
    z = as_half_plane_point(z)
    w = as_half_plane_point(w)
    return float(kernel_pairs(spec, z.as_array()[None, :], w.as_array()[None, :])[0])


def kernel_quadrature(s: float, z: PointLike, w: PointLike, nodes: int) -> float:
    """
    Trapezoidal-rule value of the reduced kernel from its defining circle average.

    With phi = psi + pi the integrand is (E + F cos psi)^{-s/2}, E = x^2 + u^2 + (y - v)^2, F = 2xu.
    The nodes are offset by half a step so the diagonal singularity at psi = pi is never sampled.

    :param s: Exponent, s > 0.
    :param nodes: Even number of nodes, at least 16.
    :raises SingularityError: At z = w with s >= 1.
    """
    if not s > 0:
        raise DomainError(f'quadrature needs s > 0, got {s}')
    if nodes < 16 or nodes % 2:
        raise DomainError(f'quadrature needs an even node count >= 16, got {nodes}')
    z = as_half_plane_point(z)
    w = as_half_plane_point(w)
    if s >= 1.0 and z == w:
        raise SingularityError(f'reduced kernel with s = {s} is singular on the diagonal')
    e = z.x ** 2 + w.x ** 2 + (z.y - w.y) ** 2
    f = 2.0 * z.x * w.x
    if e == 0:
        raise SingularityError('reduced kernel is singular at a diagonal point on the axis')
    psi = -math.pi + 2.0 * math.pi * (np.arange(nodes) + 0.5) / nodes
    return float(np.mean((e + f * np.cos(psi)) ** (-0.5 * s)))


def expansion_terms(s: float, z: PointLike, w: PointLike, R: float) -> ExpansionTerms:
    """
    Leading terms of K_s(R + z, R + w) as R grows (0 < s < 1)::

        I_s R^{-s}  -  s/(1-s) Gamma((1+s)/2) / (sqrt(pi) Gamma(1 + s/2)) |z - w|^{1-s} / (2R)
                    -  s I_s Re[z - w*] / (2R) R^{-s}

    The remainder is of order s / R^2.

    :raises DomainError: For s outside (0, 1) or R <= max(|z|, |w|).
    """
    if not (0.0 < s < 1.0):
        raise DomainError(f'expansion is stated for 0 < s < 1, got {s}')
    z = as_half_plane_point(z)
    w = as_half_plane_point(w)
    if not R > max(math.hypot(z.x, z.y), math.hypot(w.x, w.y)):
        raise DomainError(f'expansion needs R > max(|z|, |w|), got R = {R}')
    i_s = i_s_circle(s)
    distance = math.hypot(z.x - w.x, z.y - w.y)
    coefficient = s / (1.0 - s) * math.exp(ln_gamma(0.5 * (1.0 + s)) - 0.5 * math.log(math.pi)
                                           - ln_gamma(1.0 + 0.5 * s))
    return ExpansionTerms(leading=i_s * R ** -s,
                          infinity_term=-coefficient * distance ** (1.0 - s) / (2.0 * R),
                          drift_term=-s * i_s * (z.x + w.x) / (2.0 * R) * R ** -s)


def expansion_residual(s: float, z: PointLike, w: PointLike, R: float) -> float:
    """Remainder of the large-R expansion scaled like the ksr kernel: 2R |K_s(R+z, R+w) - terms|."""
    z = as_half_plane_point(z)
    w = as_half_plane_point(w)
    terms = expansion_terms(s, z, w, R)
    exact = kernel_eval(KernelSpec(KernelVariant.KS, s=s), (R + z.x, z.y), (R + w.x, w.y))
    return 2.0 * R * abs(exact - terms.total)


def symmetrized_kernel(s: float, z: PointLike, w: PointLike) -> float:
    """K_s*(z, w) = (K_s(z, w) + K_s(z, conj(w))) / 2, the kernel of charges placed symmetric to the real axis."""
    w = as_half_plane_point(w)
    spec = KernelSpec(KernelVariant.KS, s=s)
    return 0.5 * (kernel_eval(spec, z, w) + kernel_eval(spec, z, (w.x, -w.y)))


def log_infinity_kernel(z: PointLike, w: PointLike) -> float:
    """Limit of the translated logarithmic kernel, -Re[z - w*] - |z - w|."""
    z = as_half_plane_point(z)
    w = as_half_plane_point(w)
    return -(z.x + w.x) - math.hypot(z.x - w.x, z.y - w.y)


def hypersingular_weight(s: float, w: PointLike, R: Optional[float] = None) -> float:
    """
    Weight Omega(w, w) of the hypersingular (s > 1) kernel near its diagonal,
    K(z, w) ~ Omega(w, w) |z - w|^{1-s}.

    Without ``R`` this is the weight of K_s, Gamma((s-1)/2) / (sqrt(pi) Gamma(s/2)) / |w - w*|; with ``R``
    the weight of the ksr kernel, Gamma((s-1)/2) / (sqrt(pi) Gamma(s/2)) |1 + (w - w*)/(2R)|^{-1}.
    """
    if not s > 1.0:
        raise DomainError(f'hypersingular weight needs s > 1, got {s}')
    w = as_half_plane_point(w)
    coefficient = infinity_coefficient(s)
    if R is None:
        if w.x == 0:
            raise SingularityError('weight is infinite on the rotation axis')
        return coefficient / (2.0 * w.x)
    if not R > 0:
        raise DomainError(f'translation R must be positive, got {R}')
    return coefficient / (1.0 + w.x / R)


def ring_average(s: float, z: PointLike, w: PointLike, rings: int) -> float:
    """
    Discretised circle average (1/M) sum_k |lift(z, 2 pi k / M) - lift(w, 0)|^{-s} over M lifted copies of z.

    Tends to the reduced kernel K_s(z, w) as M grows, spectrally fast for z != w.
    """
    if not s > 0:
        raise DomainError(f'ring average needs s > 0, got {s}')
    if rings < 1:
        raise DomainError(f'ring average needs at least one ring point, got {rings}')
    z = as_half_plane_point(z)
    w = as_half_plane_point(w)
    phi = 2.0 * math.pi * np.arange(rings) / rings
    lifted = np.stack([z.x * np.cos(phi), z.x * np.sin(phi), np.full(rings, z.y)], axis=-1)
    distances = np.linalg.norm(lifted - np.array([w.x, 0.0, w.y]), axis=-1)
    if np.any(distances == 0):
        raise SingularityError('ring point coincides with the target point')
    return float(np.mean(distances ** -s))
