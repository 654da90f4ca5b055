import math

import numpy as np
import pytest
from scipy import special

from riesz_revolution.exceptions import DomainError, UnsupportedParameterError
from riesz_revolution.potential.specfun import (FunctionAccuracy, digamma, elliptic_e, elliptic_k,
                                                elliptic_k_complement, gamma, gauss_2f1, hyp2f1_with_complement,
                                                ln_gamma, pochhammer, riemann_zeta)


@pytest.mark.parametrize("x", [0.1, 0.25, 0.5, 1.0, 1.5, 3.7, 10.0, 42.5, 170.0])
def test_ln_gamma_matches_scipy(x):
    assert ln_gamma(x) == pytest.approx(special.gammaln(x), rel=1e-13, abs=1e-14)


@pytest.mark.parametrize("x", [-2.5, -0.25, 0.3, 1.0, 4.2])
def test_gamma_matches_scipy(x):
    assert gamma(x) == pytest.approx(special.gamma(x), rel=1e-13)


@pytest.mark.parametrize("x", [0.2, 1.0, 2.5, 11.0])
def test_digamma_matches_scipy(x):
    assert digamma(x) == pytest.approx(special.psi(x), rel=1e-12, abs=1e-13)


def test_pochhammer():
    assert pochhammer(0.5, 0) == 1.0
    assert pochhammer(0.5, 3) == pytest.approx(0.5 * 1.5 * 2.5)


@pytest.mark.parametrize(
    "a, b, c, z",
    [
        (0.25, 0.5, 1.0, 0.1),
        (0.25, 0.5, 1.0, 0.49),
        (0.25, 0.5, 1.0, 0.51),
        (0.25, 0.5, 1.0, 0.999),
        (0.45, 0.5, 1.0, 0.9999),
        (-0.5, 0.5, 1.0, 0.8),
        (0.5, 0.75, 2.0, 0.95),
        (0.5, 1.0, 2.5, 0.9),         # c - a - b = 1, logarithmic form
        (-0.5, 0.5, 2.0, 0.99),       # c - a - b = 2
        (-2.0, 0.3, 1.5, 0.97),       # terminating series
    ],
)
def test_gauss_2f1_matches_scipy(a, b, c, z):
    assert gauss_2f1(a, b, c, z) == pytest.approx(special.hyp2f1(a, b, c, z), rel=1e-12)


def test_gauss_2f1_symmetric_in_parameters():
    rng = np.random.default_rng(7)
    for _ in range(50):
        a, b = rng.uniform(-0.9, 0.9, size=2)
        z = rng.uniform(0.0, 1.0)
        assert gauss_2f1(a, b, 1.3, z) == gauss_2f1(b, a, 1.3, z)


@pytest.mark.parametrize("a, b, c", [(0.25, 0.5, 1.0), (0.5, 0.5, 2.0), (-0.5, 0.5, 1.0), (0.1, 0.2, 0.4)])
def test_gauss_sum_at_one(a, b, c):
    expected = math.exp(ln_gamma(c) + ln_gamma(c - a - b) - ln_gamma(c - a) - ln_gamma(c - b))
    assert gauss_2f1(a, b, c, 1.0) == pytest.approx(expected, rel=1e-11)


def _f_one_one_three(z):
    log = math.log1p(-z)
    return 2.0 * ((1.0 - z) * log + z) / z ** 2


def _f_one_one_four(z):
    log = math.log1p(-z)
    s1 = -log / z
    s2 = (-log - z) / z ** 2
    s3 = (-log - z - 0.5 * z * z) / z ** 3
    return 3.0 * (s1 - 2.0 * s2 + s3)


@pytest.mark.parametrize("z", [0.3, 0.6, 0.85, 0.95, 0.999])
def test_gauss_2f1_integer_gap_closed_forms(z):
    # c - a - b = 1 and 2, both on the logarithmic route near one
    assert gauss_2f1(1.0, 1.0, 3.0, z) == pytest.approx(_f_one_one_three(z), rel=1e-11)
    assert gauss_2f1(1.0, 1.0, 4.0, z) == pytest.approx(_f_one_one_four(z), rel=1e-10)


def test_gauss_2f1_integer_gap_reference(special_values):
    assert gauss_2f1(0.5, 1.0, 2.5, 0.9) == pytest.approx(special_values["hyp2f1_half_one_five_halves_0_9"],
                                                          rel=1e-12)


@pytest.mark.parametrize("m", [0.1, 0.5, 0.9, 0.99, 0.999999])
def test_second_kind_integral_is_a_2f1(m):
    assert gauss_2f1(-0.5, 0.5, 1.0, m) == pytest.approx(2.0 / math.pi * elliptic_e(m), rel=1e-12)


def test_complement_is_used_near_one(special_values):
    w = 2.0 ** -44
    z = 1.0 - w
    with_complement = hyp2f1_with_complement(0.25, 0.5, 1.0, z, w)
    assert with_complement == pytest.approx(special_values["hyp2f1_quarter_half_one_near_one"], rel=1e-12)
    # 1 - z is exact for this z
    assert gauss_2f1(0.25, 0.5, 1.0, z) == pytest.approx(with_complement, rel=1e-14)


def test_vectorised_evaluation():
    z = np.linspace(0.0, 1.0, 11)[:-1]
    values = hyp2f1_with_complement(0.3, 0.5, 1.0, z)
    assert isinstance(values, np.ndarray)
    np.testing.assert_allclose(values, special.hyp2f1(0.3, 0.5, 1.0, z), rtol=1e-12)


def test_gauss_2f1_errors():
    with pytest.raises(DomainError):
        gauss_2f1(0.5, 0.5, 1.0, 1.1)
    with pytest.raises(DomainError):
        gauss_2f1(0.5, 0.5, 0.0, 0.2)
    with pytest.raises(DomainError):
        gauss_2f1(0.5, 0.5, 1.0, 1.0)
    # c - a - b = 0 has no exact form here
    with pytest.raises(UnsupportedParameterError):
        gauss_2f1(0.5, 0.5, 1.0, 0.9)


def test_function_accuracy_validation():
    with pytest.raises(DomainError):
        FunctionAccuracy(rel_tol=1e-3)
    with pytest.raises(DomainError):
        FunctionAccuracy(max_terms=10)


@pytest.mark.parametrize("m", [0.0, 0.1, 0.5, 0.9, 0.99, 0.999999])
def test_elliptic_k(m):
    assert elliptic_k(m) == pytest.approx(special.ellipk(m), rel=1e-13)


@pytest.mark.parametrize("m", [0.0, 0.3, 0.7, 0.95])
def test_elliptic_k_is_half_pi_2f1(m):
    assert elliptic_k(m) == pytest.approx(0.5 * math.pi * special.hyp2f1(0.5, 0.5, 1.0, m), rel=1e-11)


def test_elliptic_k_reference(special_values):
    assert elliptic_k(0.5) == pytest.approx(special_values["elliptic_k_half"], rel=1e-14)
    assert elliptic_k_complement(math.sqrt(0.5)) == elliptic_k(0.5)


def test_elliptic_k_complement_array():
    k_prime = np.array([0.1, 0.5, 1.0])
    np.testing.assert_allclose(elliptic_k_complement(k_prime), special.ellipk(1.0 - k_prime ** 2), rtol=1e-13)
    with pytest.raises(DomainError):
        elliptic_k_complement(0.0)


@pytest.mark.parametrize("m", [0.0, 0.2, 0.8, 0.999, 1.0])
def test_elliptic_e(m):
    assert elliptic_e(m) == pytest.approx(special.ellipe(m), rel=1e-12)


def test_riemann_zeta_closed_forms(special_values):
    assert riemann_zeta(2.0) == pytest.approx(special_values["zeta_2"], rel=1e-12)
    assert riemann_zeta(3.0) == pytest.approx(special_values["zeta_3"], rel=1e-12)
    assert riemann_zeta(4.0) == pytest.approx(special_values["zeta_4"], rel=1e-12)


@pytest.mark.parametrize("s", [1.05, 1.5, 2.5, 7.0, 30.0])
def test_riemann_zeta_matches_scipy(s):
    assert riemann_zeta(s) == pytest.approx(special.zeta(s), rel=1e-12)


def test_riemann_zeta_domain():
    with pytest.raises(DomainError):
        riemann_zeta(1.0)
