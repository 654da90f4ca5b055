"""
Second derivatives of the reduced kernels along curves.

Convexity of the kernel along vertical segments and of the limit kernel along segments and circles is what
makes the discrete energy minimisers on those curves unique.
"""
from __future__ import annotations
import math

from riesz_revolution.exceptions import DomainError
from riesz_revolution.potential.kernel import infinity_coefficient
from riesz_revolution.potential.specfun import gauss_2f1, hyp2f1_with_complement


def vertical_convexity(R: float, delta_y: float, s: float, scaled: bool = False) -> float:
    """
    Closed-form second derivative d^2/dy^2 K_s(R + iy, R + iv) at delta = y - v, 0 < s < 1::

        s [ (1+s) delta^4 F(1/2, 1-s/2; 1; zeta) + 2R^2 (4sR^2 + (1+2s) delta^2) F(1/2, 1-s/2; 2; zeta) ]
        ---------------------------------------------------------------------------------------------------
                                   (4R^2 + delta^2)^{5/2} |delta|^{1+s}

    with zeta = 4R^2 / (4R^2 + delta^2).

    :param scaled: Return the bracket alone. It stays finite as delta -> 0, with the limit
                   8 s R^4 F(1/2, 1-s/2; 2; 1), while the derivative itself grows like |delta|^{-1-s}.
    :raises DomainError: For R <= 0, s outside (0, 1) or delta = 0 without ``scaled``.
    """
    if not (math.isfinite(R) and R > 0):
        raise DomainError(f'vertical convexity needs R > 0, got {R}')
    if not 0.0 < s < 1.0:
        raise DomainError(f'vertical convexity needs 0 < s < 1, got {s}')
    if not math.isfinite(delta_y):
        raise DomainError('height difference must be finite')

    r2 = R * R
    b = 1.0 - 0.5 * s
    if delta_y == 0:
        if not scaled:
            raise DomainError('second derivative is infinite at delta = 0')
        return 8.0 * s * r2 * r2 * gauss_2f1(0.5, b, 2.0, 1.0)

    d2 = delta_y * delta_y
    total = 4.0 * r2 + d2
    zeta = 4.0 * r2 / total
    complement = d2 / total
    bracket = ((1.0 + s) * d2 * d2 * hyp2f1_with_complement(0.5, b, 1.0, zeta, complement)
               + 2.0 * r2 * (4.0 * s * r2 + (1.0 + 2.0 * s) * d2) * hyp2f1_with_complement(0.5, b, 2.0, zeta,
                                                                                           complement))
    if scaled:
        return bracket
    return s * bracket / (total ** 2.5 * abs(delta_y) ** (1.0 + s))


def infinity_kernel_convexity(s: float, t: float, T: float, kind: str = 'segment', radius: float = 1.0) -> float:
    """
    Second derivative of the limit kernel c_s |z - w|^{1-s} as z moves along a curve and w stays fixed.

    :param kind: 'segment': z and w at arc positions t and T on a straight line.
                 'circle': z and w at angles t and T on a circle of the given radius.
    :raises DomainError: For s outside (0, 1) or coinciding positions.
    """
    if not 0.0 < s < 1.0:
        raise DomainError(f'limit kernel convexity is stated for 0 < s < 1, got {s}')
    coefficient = infinity_coefficient(s)
    p = 1.0 - s
    if kind == 'segment':
        gap = abs(t - T)
        if gap == 0:
            raise DomainError('positions coincide')
        return coefficient * p * (p - 1.0) * gap ** (p - 2.0)
    if kind == 'circle':
        if not radius > 0:
            raise DomainError(f'radius must be positive, got {radius}')
        half = 0.5 * math.remainder(t - T, 2.0 * math.pi)
        sine = abs(math.sin(half))
        if sine == 0:
            raise DomainError('positions coincide')
        # chord 2r|sin(delta/2)|
        scale = coefficient * (2.0 * radius) ** p
        return scale * 0.25 * p * sine ** (p - 2.0) * ((p - 1.0) * math.cos(half) ** 2 - sine ** 2)
    raise DomainError(f'unknown curve kind for limit kernel convexity: {kind}')
