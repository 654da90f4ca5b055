"""
Scalar special functions behind the reduced kernels: log-gamma, the Gauss hypergeometric function on
[0, 1], complete elliptic integrals and the Riemann zeta function.

The public functions take python floats. :func:`hyp2f1_with_complement` and
:func:`elliptic_k_complement` also accept numpy arrays; they are the vectorised entry points used by
the kernel module, which passes the complement ``1 - z`` computed from distances so that near-diagonal
arguments keep full precision.
"""
from __future__ import annotations
import logging
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

from riesz_revolution.config.settings import (FUNCTION_REL_TOL, FUNCTION_MAX_TERMS, HYP2F1_SWITCH,
                                              INTEGER_TOL, EXACT_INTEGER_TOL, AGM_MAX_ITERATIONS, AGM_REL_TOL)
from riesz_revolution.exceptions import ConvergenceError, DomainError, UnsupportedParameterError

logger = logging.getLogger(__name__)

ArrayOrFloat = Union[float, NDArray[np.float64]]


@dataclass(frozen=True)
class FunctionAccuracy:
    """Target relative error and term budget of a series evaluation."""
    rel_tol: float = FUNCTION_REL_TOL
    max_terms: int = FUNCTION_MAX_TERMS

    def __post_init__(self):
        if not (0 < self.rel_tol <= 1e-8):
            raise DomainError(f'rel_tol must lie in (0, 1e-8], got {self.rel_tol}')
        if int(self.max_terms) != self.max_terms or self.max_terms < 50:
            raise DomainError(f'max_terms must be an integer >= 50, got {self.max_terms}')


DEFAULT_ACCURACY = FunctionAccuracy()

# ---------------------------------------------------
# Lanczos approximation (g, N = 6.02468, 13), rational form of the exp(g)-scaled sum
LANCZOS_G: float = 6.024680040776729583740234375
_LANCZOS_NUM = np.array([
    0.006061842346248906525783753964555936883222,
    0.5098416655656676188125178644804694509993,
    19.51992788247617482847860966235652136208,
    449.9445569063168119446858607650988409623,
    6955.999602515376140356310115515198987526,
    75999.29304014542649875303443598909137092,
    601859.6171681098786670226533699352302507,
    3481712.15498064590882071018964774556468,
    14605578.08768506808414169982791359218571,
    43338889.32467613834773723740590533316085,
    86363131.28813859145546927288977868422342,
    103794043.1163445451906271053616070238554,
    56906521.91347156388090791033559122686859,
])
# x(x+1)...(x+11), highest power first
_LANCZOS_DENOM = np.array([1., 66., 1925., 32670., 357423., 2637558., 13339535., 45995730., 105258076.,
                           150917976., 120543840., 39916800., 0.])

# B_2, B_4, ..., B_16
_BERNOULLI = (1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0,
              -3617.0 / 510.0)
_ZETA_CUTOFF = 10


def _lanczos_sum_expg_scaled(x: float) -> float:
    # evaluated in 1/x above 1 so that the degree-12 polynomials never overflow
    if x > 1.0:
        y = 1.0 / x
        return float(np.polyval(_LANCZOS_NUM[::-1], y) / np.polyval(_LANCZOS_DENOM[::-1], y))
    return float(np.polyval(_LANCZOS_NUM, x) / np.polyval(_LANCZOS_DENOM, x))


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0 and x == math.floor(x)


def ln_gamma(x: float) -> float:
    """
    Natural logarithm of the gamma function for positive arguments.

    :param x: Positive real argument.
    :return: ln Gamma(x), with a relative error of at most 1e-13 on Gamma(x).
    :raises DomainError: If x is not a finite positive number.
    """
    x = float(x)
    if not math.isfinite(x) or x <= 0:
        raise DomainError(f'ln_gamma needs x > 0, got {x}')
    if x < 1.0:
        return ln_gamma(x + 1.0) - math.log(x)
    if x > 1e15:
        # Stirling, the Lanczos rational is exhausted long before this
        return (x - 0.5) * math.log(x) - x + 0.5 * math.log(2.0 * math.pi) + 1.0 / (12.0 * x)
    zgh = x + LANCZOS_G - 0.5
    return (x - 0.5) * (math.log(zgh) - 1.0) + math.log(_lanczos_sum_expg_scaled(x))


def gamma(x: float) -> float:
    """Signed gamma function for real x that is not a pole (reflection below zero)."""
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f'gamma needs a finite argument, got {x}')
    if x > 0:
        try:
            return math.exp(ln_gamma(x))
        except OverflowError:
            raise DomainError(f'gamma overflows at x = {x}')
    if x == math.floor(x):
        raise DomainError(f'gamma has a pole at x = {x}')
    return math.pi / (math.sin(math.pi * x) * gamma(1.0 - x))


def rgamma(x: float) -> float:
    """Reciprocal gamma function, zero at the poles of gamma."""
    if _is_nonpositive_integer(x):
        return 0.0
    return 1.0 / gamma(x)


def digamma(x: float) -> float:
    """Logarithmic derivative of the gamma function."""
    x = float(x)
    if x <= 0:
        if x == math.floor(x):
            raise DomainError(f'digamma has a pole at x = {x}')
        return digamma(1.0 - x) - math.pi / math.tan(math.pi * x)
    result = 0.0
    while x < 10.0:
        result -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    series = inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 * (
        1.0 / 240.0 - inv2 * (1.0 / 132.0 - inv2 * 691.0 / 32760.0)))))
    return result + math.log(x) - 0.5 / x - series


def pochhammer(a: float, n: int) -> float:
    """Rising factorial (a)_n = a (a + 1) ... (a + n - 1)."""
    result = 1.0
    for k in range(n):
        result *= a + k
    return result


def _series(a: float, b: float, c: float, z: NDArray[np.float64], accuracy: FunctionAccuracy) -> NDArray:
    total = np.ones_like(z)
    term = np.ones_like(z)
    for k in range(accuracy.max_terms):
        term = term * ((a + k) * (b + k) / ((c + k) * (k + 1.0))) * z
        total = total + term
        if np.all(np.abs(term) <= accuracy.rel_tol * np.abs(total)):
            return total
    raise ConvergenceError(f'2F1({a}, {b}; {c}; z) series did not converge in {accuracy.max_terms} terms '
                           f'(max z = {float(np.max(z))})')


def _gauss_sum(a: float, b: float, c: float) -> float:
    # F(a, b; c; 1) = Gamma(c) Gamma(c - a - b) / (Gamma(c - a) Gamma(c - b))
    if not c - a - b > 0:
        raise DomainError(f'2F1({a}, {b}; {c}; 1) diverges, c - a - b = {c - a - b} <= 0')
    return gamma(c) * gamma(c - a - b) * rgamma(c - a) * rgamma(c - b)


def _connection(a: float, b: float, c: float, w: NDArray[np.float64], accuracy: FunctionAccuracy) -> NDArray:
    # 1 - z connection formula for non-integer c - a - b, w = 1 - z
    cab = c - a - b
    first = gamma(c) * gamma(cab) * rgamma(c - a) * rgamma(c - b)
    second = gamma(c) * gamma(-cab) * rgamma(a) * rgamma(b)
    result = first * _series(a, b, 1.0 - cab, w, accuracy)
    if second != 0.0:
        result = result + second * np.power(w, cab) * _series(c - a, c - b, cab + 1.0, w, accuracy)
    return result


def _log_connection(a: float, b: float, m: int, w: NDArray[np.float64], accuracy: FunctionAccuracy) -> NDArray:
    # F(a, b; a + b + m; 1 - w) for a positive integer m (logarithmic limit of the connection formula)
    c = a + b + m
    finite = np.zeros_like(w)
    coefficient = gamma(m) * gamma(c) * rgamma(a + m) * rgamma(b + m)
    for n in range(m):
        finite = finite + coefficient * np.power(w, n)
        if n + 1 < m:
            coefficient *= (a + n) * (b + n) / ((n + 1.0) * (n + 1.0 - m))

    prefactor = -((-1.0) ** m) * gamma(c) * rgamma(a) * rgamma(b)
    if prefactor == 0.0:
        return finite

    log_w = np.log(w)
    total = np.zeros_like(w)
    weight = 1.0 / math.factorial(m)
    power = np.ones_like(w)
    for n in range(accuracy.max_terms):
        psi = -digamma(n + 1.0) - digamma(n + m + 1.0) + digamma(a + n + m) + digamma(b + n + m)
        term = weight * power * (log_w + psi)
        total = total + term
        if n > 0 and np.all(np.abs(term) <= accuracy.rel_tol * np.abs(total)):
            return finite + prefactor * np.power(w, m) * total
        weight *= (a + m + n) * (b + m + n) / ((n + 1.0) * (n + m + 1.0))
        power = power * w
    raise ConvergenceError(f'logarithmic 2F1({a}, {b}; {c}; 1 - w) series did not converge')


def _upper(a: float, b: float, c: float, w: NDArray[np.float64], accuracy: FunctionAccuracy) -> NDArray:
    out = np.empty_like(w)
    at_one = w == 0.0
    if np.any(at_one):
        out[at_one] = _gauss_sum(a, b, c)
    rest = ~at_one
    if not np.any(rest):
        return out

    cab = c - a - b
    nearest = round(cab)
    if abs(cab - nearest) <= EXACT_INTEGER_TOL and nearest >= 1:
        out[rest] = _log_connection(a, b, int(nearest), w[rest], accuracy)
    elif abs(cab - nearest) < INTEGER_TOL:
        raise UnsupportedParameterError(f'connection formula for 2F1({a}, {b}; {c}; z) is degenerate: '
                                        f'c - a - b = {cab} is within {INTEGER_TOL} of an integer')
    else:
        out[rest] = _connection(a, b, c, w[rest], accuracy)
    return out


def hyp2f1_with_complement(a: float, b: float, c: float, z: ArrayLike, one_minus_z: Optional[ArrayLike] = None,
                           accuracy: FunctionAccuracy = DEFAULT_ACCURACY) -> ArrayOrFloat:
    """
    Gauss hypergeometric function 2F1(a, b; c; z) for real z in [0, 1], vectorised over z.

    Below z = 1/2 the defining series is summed; above, the 1 - z connection formula is used, so
    both series converge at a geometric rate of at most 1/2. When c - a - b is a positive integer
    the logarithmic form of the connection formula applies. If a or b is a non-positive integer the
    terminating series is used on the whole interval.

    :param a: First numerator parameter.
    :param b: Second numerator parameter.
    :param c: Denominator parameter, not a non-positive integer.
    :param z: Argument(s) in [0, 1].
    :param one_minus_z: Optional separately computed complement 1 - z, used above z = 1/2.
    :param accuracy: Tolerance and term budget of the series.
    :return: Float for scalar input, array otherwise.

    :raises DomainError: For z outside [0, 1], c a non-positive integer, or z = 1 with c - a - b <= 0.
    :raises UnsupportedParameterError: If c - a - b is within 1e-8 of an integer where no exact form applies.
    :raises ConvergenceError: If a series exceeds the term budget.
    """
    if b < a:
        a, b = b, a
    if _is_nonpositive_integer(c):
        raise DomainError(f'2F1 is undefined for c = {c}')

    z_arr = np.asarray(z, dtype=float)
    scalar = z_arr.ndim == 0
    z_arr = np.atleast_1d(z_arr)
    if np.any(~np.isfinite(z_arr)) or np.any(z_arr < 0.0) or np.any(z_arr > 1.0):
        raise DomainError('2F1 argument must lie in [0, 1]')
    if one_minus_z is None:
        w_arr = 1.0 - z_arr
    else:
        w_arr = np.broadcast_to(np.atleast_1d(np.asarray(one_minus_z, dtype=float)), z_arr.shape)
        w_arr = np.clip(w_arr, 0.0, 1.0)

    if _is_nonpositive_integer(a) or _is_nonpositive_integer(b):
        out = _series(a, b, c, z_arr, accuracy)
    else:
        out = np.empty_like(z_arr)
        low = z_arr <= HYP2F1_SWITCH
        if np.any(low):
            out[low] = _series(a, b, c, z_arr[low], accuracy)
        if not np.all(low):
            out[~low] = _upper(a, b, c, np.array(w_arr[~low]), accuracy)
    return float(out[0]) if scalar else out


def gauss_2f1(a: float, b: float, c: float, z: float, accuracy: FunctionAccuracy = DEFAULT_ACCURACY) -> float:
    """
    Gauss hypergeometric function 2F1(a, b; c; z) for a scalar z in [0, 1].

    See :func:`hyp2f1_with_complement` for the evaluation routes and errors. The result is symmetric
    in (a, b) bit for bit.
    """
    return float(hyp2f1_with_complement(a, b, c, float(z), accuracy=accuracy))


def elliptic_k_complement(k_prime: ArrayLike) -> ArrayOrFloat:
    """
    Complete elliptic integral of the first kind from the complementary modulus k' = sqrt(1 - m),
    via the arithmetic-geometric mean: K = pi / (2 AGM(1, k')).
    """
    kp = np.asarray(k_prime, dtype=float)
    scalar = kp.ndim == 0
    kp = np.atleast_1d(kp)
    if np.any(~(kp > 0)) or np.any(kp > 1):
        raise DomainError('complementary modulus must lie in (0, 1]')
    a = np.ones_like(kp)
    b = kp.copy()
    for _ in range(AGM_MAX_ITERATIONS):
        if np.all(np.abs(a - b) <= AGM_REL_TOL * a):
            break
        a, b = 0.5 * (a + b), np.sqrt(a * b)
    else:
        raise ConvergenceError('AGM iteration did not converge')
    out = 0.5 * math.pi / a
    return float(out[0]) if scalar else out


def elliptic_k(m: float) -> float:
    """
    Complete elliptic integral of the first kind, K(m) = int_0^{pi/2} (1 - m sin^2)^{-1/2}.

    :param m: Parameter in [0, 1).
    :return: K(m) with a relative error of at most 1e-13.
    :raises DomainError: For m outside [0, 1).
    """
    m = float(m)
    if not (0.0 <= m < 1.0):
        raise DomainError(f'elliptic_k needs 0 <= m < 1, got {m}')
    return float(elliptic_k_complement(math.sqrt(1.0 - m)))


def elliptic_e(m: float) -> float:
    """Complete elliptic integral of the second kind, E(m), by the AGM with the c_n-sum correction."""
    m = float(m)
    if not (0.0 <= m <= 1.0):
        raise DomainError(f'elliptic_e needs 0 <= m <= 1, got {m}')
    if m == 1.0:
        return 1.0
    a, b = 1.0, math.sqrt(1.0 - m)
    correction = 0.5 * m
    scale = 0.5
    for _ in range(AGM_MAX_ITERATIONS):
        if abs(a - b) <= AGM_REL_TOL * a:
            break
        c = 0.5 * (a - b)
        a, b = 0.5 * (a + b), math.sqrt(a * b)
        scale *= 2.0
        correction += scale * c * c
    return 0.5 * math.pi / a * (1.0 - correction)


def riemann_zeta(s: float) -> float:
    """
    Riemann zeta function for real s > 1 by Euler-Maclaurin summation.

    :param s: Real exponent, s > 1.
    :return: zeta(s) with a relative error of at most 1e-12.
    :raises DomainError: For s <= 1.
    """
    s = float(s)
    if not s > 1.0:
        raise DomainError(f'riemann_zeta needs s > 1, got {s}')
    n = _ZETA_CUTOFF
    total = math.fsum(k ** -s for k in range(1, n))
    total += n ** (1.0 - s) / (s - 1.0) + 0.5 * n ** -s
    rising = s
    for j, bernoulli in enumerate(_BERNOULLI, start=1):
        total += bernoulli / math.factorial(2 * j) * rising * n ** (-s - 2 * j + 1)
        rising *= (s + 2 * j - 1) * (s + 2 * j)
    return total
