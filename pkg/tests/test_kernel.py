import math

import numpy as np
import pytest
from scipy import special

from riesz_revolution.exceptions import DomainError, SingularityError
from riesz_revolution.potential.kernel import (HalfPlanePoint, KernelSpec, KernelVariant, PlanePoint,
                                               expansion_residual, expansion_terms, hypersingular_weight,
                                               i_s_circle, infinity_coefficient, kernel_eval, kernel_matrix,
                                               kernel_pairs, kernel_quadrature, log_infinity_kernel, reflect,
                                               ring_average, symmetrized_kernel)


def ks(s):
    return KernelSpec(KernelVariant.KS, s=s)


def test_half_plane_point_validation():
    assert HalfPlanePoint(0, 2) == HalfPlanePoint(0.0, 2.0)
    with pytest.raises(DomainError):
        HalfPlanePoint(-1e-12, 0.0)
    with pytest.raises(DomainError):
        HalfPlanePoint(1.0, math.nan)


@pytest.mark.parametrize(
    "w, expected",
    [
        (HalfPlanePoint(1.0, 0.0), PlanePoint(-1.0, 0.0)),
        (HalfPlanePoint(0.0, 2.0), PlanePoint(0.0, 2.0)),
    ],
)
def test_reflect(w, expected):
    assert reflect(w) == expected
    assert reflect(reflect(w)) == PlanePoint(w.x, w.y)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"variant": "ks"},                          # s missing
        {"variant": "ks", "s": 0.0},
        {"variant": "ksinf", "s": 1.0},
        {"variant": "ksr", "s": 0.5},               # R missing
        {"variant": "ksr", "s": 1.0, "R": 2.0},
        {"variant": "k0", "s": 0.5},
        {"variant": "k1", "R": 1.0},
        {"variant": "ks", "s": 0.5, "R": 2.0},
        {"variant": "unknown", "s": 0.5},
    ],
)
def test_kernel_spec_validation(kwargs):
    with pytest.raises(DomainError):
        KernelSpec(**kwargs)


def test_kernel_spec_properties():
    assert KernelSpec("k0").effective_s == 0.0
    assert KernelSpec("k1").effective_s == 1.0
    assert KernelSpec("k1").singular_diagonal
    assert not ks(0.5).singular_diagonal
    assert ks(1.0).singular_diagonal
    assert not KernelSpec("ksinf", s=0.5).singular_diagonal
    assert KernelSpec("ksinf", s=3.0).rotation_invariant
    assert KernelSpec("ksr", s=0.5, R=10).to_dict() == {"variant": "ksr", "s": 0.5, "R": 10.0}
    assert KernelSpec("k0").to_dict() == {"variant": "k0"}
    assert KernelSpec("ksinf", s=3.0).to_dict() == {"variant": "ksinf", "s": 3.0}


def test_axis_point_closed_form(special_values):
    assert kernel_eval(ks(0.5), (1.0, 0.0), (0.0, 1.0)) == pytest.approx(special_values["axis_kernel_half"],
                                                                          rel=1e-14)


def test_diagonal_value(special_values):
    assert kernel_eval(ks(0.5), (1.0, 0.0), (1.0, 0.0)) == pytest.approx(special_values["i_s_half"], abs=1e-7)
    assert kernel_eval(ks(0.5), (2.0, 3.0), (2.0, 3.0)) == pytest.approx(i_s_circle(0.5) * 2.0 ** -0.5,
                                                                          rel=1e-14)


@pytest.mark.parametrize("s", [0.1, 0.5, 0.9])
def test_i_s_circle_matches_gamma_oracle(s):
    assert i_s_circle(s) == pytest.approx(special.gamma(1 - s) / special.gamma(1 - s / 2) ** 2, rel=1e-12)


def test_i_s_circle_limits():
    assert i_s_circle(1e-9) == pytest.approx(1.0, abs=1e-8)
    # both closed forms give this value at s = 0.9
    assert i_s_circle(0.9) == pytest.approx(3.6424, abs=1e-3)
    with pytest.raises(DomainError):
        i_s_circle(1.0)


def test_infinity_coefficient(special_values):
    assert infinity_coefficient(0.5) == pytest.approx(special_values["ksinf_coefficient_half"], abs=1e-6)
    assert infinity_coefficient(0.5) == pytest.approx(special.gamma(-0.25) / (math.sqrt(math.pi) * special.gamma(0.25)),
                                                      rel=1e-13)
    assert infinity_coefficient(3.0) == pytest.approx(2.0 / math.pi, rel=1e-14)
    assert kernel_eval(KernelSpec("ksinf", s=0.5), (1, 0), (2, 0)) == pytest.approx(infinity_coefficient(0.5))


@pytest.mark.parametrize(
    "s, z, w, nodes",
    [
        (0.5, (1.0, 1.0), (2.0, 0.0), 512),
        (0.25, (1.0, 0.2), (0.7, -0.3), 1024),
        (0.9, (0.3, 0.0), (2.5, 1.0), 512),
        (1.5, (1.0, 0.2), (0.7, -0.3), 1024),
        (2.0, (1.5, 0.0), (1.0, 0.5), 1024),
        (3.0, (1.0, 0.0), (1.0, 1.0), 1024),
        (4.0, (2.0, 0.3), (1.0, -0.4), 1024),
    ],
)
def test_kernel_matches_quadrature(s, z, w, nodes):
    assert kernel_eval(ks(s), z, w) == pytest.approx(kernel_quadrature(s, z, w, nodes), rel=1e-10)


def test_kernel_matches_quadrature_randomized():
    rng = np.random.default_rng(2024)
    for _ in range(200):
        s = rng.choice([rng.uniform(0.05, 0.95), rng.uniform(1.05, 1.95)])
        z = (rng.uniform(0.2, 2.0), rng.uniform(-1.0, 1.0))
        w = (rng.uniform(0.2, 2.0), rng.uniform(-1.0, 1.0))
        if math.dist(z, w) < 0.3:
            continue
        assert kernel_eval(ks(s), z, w) == pytest.approx(kernel_quadrature(s, z, w, 1024), rel=1e-10)


def test_elliptic_kernel_matches_quadrature():
    value = kernel_eval(KernelSpec("k1"), (1.0, 0.0), (1.0, 1.0))
    assert value == pytest.approx(kernel_quadrature(1.0, (1.0, 0.0), (1.0, 1.0), 1024), rel=1e-9)
    assert kernel_eval(ks(1.0), (1.0, 0.0), (1.0, 1.0)) == value


def test_elliptic_limit():
    z, w = (1.0, 0.3), (0.6, -0.2)
    assert kernel_eval(ks(1.0 - 1e-6), z, w) == pytest.approx(kernel_eval(KernelSpec("k1"), z, w), rel=1e-5)


def test_logarithmic_limit():
    z, w = (1.0, 0.3), (0.6, -0.2)
    k0 = kernel_eval(KernelSpec("k0"), z, w)
    slopes = [(kernel_eval(ks(s), z, w) - 1.0) / s for s in (1e-3, 1e-4)]
    # first order Richardson step in s
    extrapolated = (10.0 * slopes[1] - slopes[0]) / 9.0
    assert extrapolated == pytest.approx(k0, abs=1e-6)


def test_log_kernel_on_axis():
    assert kernel_eval(KernelSpec("k0"), (0.0, 0.0), (0.0, 2.0)) == pytest.approx(-math.log(2.0), rel=1e-14)
    with pytest.raises(SingularityError):
        kernel_eval(KernelSpec("k0"), (0.0, 1.0), (0.0, 1.0))


def test_symmetry_randomized():
    rng = np.random.default_rng(11)
    specs = [ks(0.3), ks(1.7), KernelSpec("ksr", s=0.5, R=5.0), KernelSpec("ksinf", s=3.0), KernelSpec("k0"),
             KernelSpec("k1")]
    z = np.column_stack([rng.uniform(0, 2, 50), rng.uniform(-1, 1, 50)])
    w = np.column_stack([rng.uniform(0, 2, 50), rng.uniform(-1, 1, 50)])
    for spec in specs:
        np.testing.assert_array_equal(kernel_pairs(spec, z, w), kernel_pairs(spec, w, z))


@pytest.mark.parametrize("s", [0.3, 0.8, 1.6, 3.0])
def test_homogeneity(s):
    z, w = np.array([0.8, 0.1]), np.array([1.3, -0.6])
    assert kernel_eval(ks(s), 2.5 * z, 2.5 * w) == pytest.approx(2.5 ** -s * kernel_eval(ks(s), z, w), rel=1e-12)


def test_monotone_along_vertical_and_horizontal_lines():
    spec = ks(0.5)
    vertical = [kernel_eval(spec, (1.0, t), (1.0, 0.0)) for t in np.linspace(0.0, 3.0, 31)]
    assert np.all(np.diff(vertical) < 0)
    horizontal = [kernel_eval(spec, (1.0 + t, 0.5), (1.0, 0.5)) for t in np.linspace(0.0, 3.0, 31)]
    assert np.all(np.diff(horizontal) < 0)


def test_global_maximum_at_w():
    spec = ks(0.5)
    w = (1.0, 0.0)
    xs = np.linspace(0.5, 1.5, 101)
    ys = np.linspace(-0.5, 0.5, 101)
    grid = np.array([(x, y) for y in ys for x in xs])
    values = kernel_pairs(spec, grid, np.broadcast_to(w, grid.shape))
    assert tuple(grid[np.argmax(values)]) == pytest.approx(w)


def test_diagonal_limit():
    spec = ks(0.5)
    w = (1.2, 0.4)
    target = i_s_circle(0.5) * 1.2 ** -0.5
    for direction in ((1.0, 0.0), (0.0, 1.0), (-0.6, 0.8)):
        z = (w[0] + 1e-9 * direction[0], w[1] + 1e-9 * direction[1])
        assert kernel_eval(spec, z, w) == pytest.approx(target, rel=1e-4)


@pytest.mark.parametrize(
    "spec, z, w",
    [
        (ks(1.0), (1.0, 0.0), (1.0, 0.0)),
        (ks(2.0), (1.0, 0.5), (1.0, 0.5)),
        (KernelSpec("k1"), (1.0, 0.0), (1.0, 0.0)),
        (KernelSpec("ksinf", s=3.0), (1.0, 0.0), (1.0, 0.0)),
        (KernelSpec("ksr", s=2.0, R=3.0), (1.0, 0.0), (1.0, 0.0)),
        (ks(0.5), (0.0, 1.0), (0.0, 1.0)),
    ],
)
def test_singular_diagonal(spec, z, w):
    with pytest.raises(SingularityError):
        kernel_eval(spec, z, w)


def test_translated_kernel_tends_to_limit_kernel():
    z, w = (0.3, 0.2), (0.1, -0.4)
    limit = kernel_eval(KernelSpec("ksinf", s=3.0), z, w)
    assert kernel_eval(KernelSpec("ksr", s=3.0, R=1e4), z, w) == pytest.approx(limit, rel=1e-3)


def test_translated_kernel_below_one():
    z, w = (0.3, 0.2), (0.1, -0.4)
    R = 50.0
    value = kernel_eval(KernelSpec("ksr", s=0.5, R=R), z, w)
    direct = 2.0 * R * (kernel_eval(ks(0.5), (R + 0.3, 0.2), (R + 0.1, -0.4)) - i_s_circle(0.5) * R ** -0.5)
    assert value == pytest.approx(direct, rel=1e-12)


def test_kernel_matrix_shape():
    a = [(1.0, 0.0), (2.0, 0.0), (1.0, 1.0)]
    b = [(0.5, 0.5), (1.5, -0.5)]
    matrix = kernel_matrix(ks(0.5), a, b)
    assert matrix.shape == (3, 2)
    assert matrix[2, 1] == pytest.approx(kernel_eval(ks(0.5), a[2], b[1]))


def test_quadrature_validation():
    with pytest.raises(DomainError):
        kernel_quadrature(0.5, (1, 0), (2, 0), 15)
    with pytest.raises(DomainError):
        kernel_quadrature(0.5, (1, 0), (2, 0), 17)
    with pytest.raises(SingularityError):
        kernel_quadrature(1.5, (1, 0), (1, 0), 64)


def test_ring_average_tends_to_kernel():
    z, w = (1.0, 0.5), (1.5, -0.2)
    assert ring_average(0.5, z, w, 512) == pytest.approx(kernel_eval(ks(0.5), z, w), rel=1e-9)


def test_expansion_terms():
    terms = expansion_terms(0.5, (0.3, 0.2), (0.1, -0.4), 100.0)
    assert terms.leading == pytest.approx(0.1180341, abs=1e-7)
    assert terms.leading == pytest.approx(i_s_circle(0.5) / 10.0, rel=1e-12)
    assert terms.total == terms.leading + terms.infinity_term + terms.drift_term
    assert expansion_terms(0.5, (0.0, 0.0), (0.0, 3.0), 100.0).drift_term == 0.0
    with pytest.raises(DomainError):
        expansion_terms(1.5, (0.3, 0.2), (0.1, -0.4), 100.0)
    with pytest.raises(DomainError):
        expansion_terms(0.5, (0.3, 0.2), (0.1, -0.4), 0.2)


@pytest.mark.parametrize("R", [1e2, 1e3, 1e4])
def test_expansion_residual_decays_like_one_over_r(R):
    z, w = (0.3, 0.4), (0.8, -0.2)
    ratio = expansion_residual(0.5, z, w, 2.0 * R) / expansion_residual(0.5, z, w, R)
    assert 0.4 <= ratio <= 0.6


def test_hypersingular_weight():
    w = (1.0, 0.0)
    eps = 1e-5
    near = kernel_eval(ks(3.0), (1.0, eps), w) * eps ** 2
    assert near == pytest.approx(hypersingular_weight(3.0, w), rel=1e-3)
    assert hypersingular_weight(3.0, w, R=1.0) == pytest.approx(infinity_coefficient(3.0) / 2.0)
    with pytest.raises(DomainError):
        hypersingular_weight(0.5, w)


def test_symmetrized_and_log_limit_kernels():
    z, w = (1.0, 0.0), (1.0, 1.0)
    assert symmetrized_kernel(0.5, z, w) == pytest.approx(kernel_eval(ks(0.5), z, w), rel=1e-14)
    assert log_infinity_kernel(z, w) == pytest.approx(-3.0)
