import math

import pytest

from geometry.curvature import ProfileSample, curvatures, raw_theta_prime, theta_prime, weingarten_residual
from geometry.params import Params
from phi.prescribed import load_phi
from utils.errors import AxisPoint, InvalidParams, NearSingular

UNIT = Params(1.0, 1.0)


@pytest.fixture
def three():
    return load_phi("3")


def test_theta_prime_vanishes_on_the_equilibrium(three):
    assert theta_prime(1 / 3, math.pi / 2, UNIT, three) == pytest.approx(0.0, abs=1e-15)


def test_theta_prime_on_the_horizontal_line(three):
    assert theta_prime(1.0, math.pi, UNIT, three) == pytest.approx(3.0)


def test_theta_prime_refuses_the_singular_curve(three):
    with pytest.raises(NearSingular):
        theta_prime(1.0, 3 * math.pi / 2, UNIT, three)


def test_raw_theta_prime_is_infinite_on_the_singular_curve(three):
    assert raw_theta_prime(1.0, 3 * math.pi / 2, UNIT, three) == math.inf


def test_curvatures_of_a_cylinder():
    kappa1, kappa2, H, K = curvatures(1.0, math.pi / 2, 0.0)
    assert (kappa1, kappa2, H, K) == pytest.approx((0.0, 1.0, 0.5, 0.0))


def test_curvatures_of_the_unit_sphere():
    theta = 0.7
    kappa1, kappa2, H, K = curvatures(math.sin(theta), theta, 1.0)
    assert kappa2 == pytest.approx(1.0)
    assert H == pytest.approx(1.0)
    assert K == pytest.approx(1.0)


def test_curvatures_need_a_positive_radius():
    with pytest.raises(AxisPoint):
        curvatures(0.0, 0.0, 1.0)


def test_residual_on_the_cylinder_and_the_sphere(three):
    cylinder = ProfileSample.at(0.0, 1 / 3, 0.0, math.pi / 2, 0.0)
    assert weingarten_residual(cylinder, UNIT, three) == pytest.approx(0.0, abs=1e-14)
    theta = 1.1
    sphere = ProfileSample.at(0.0, math.sin(theta), -math.cos(theta), theta, 1.0)
    assert weingarten_residual(sphere, UNIT, three) == pytest.approx(0.0, abs=1e-14)


def test_residual_of_a_wrong_radius(three):
    sample = ProfileSample.at(0.0, 0.5, 0.0, math.pi / 2, 0.0)
    assert weingarten_residual(sample, UNIT, three) == pytest.approx(-1.0)


def test_axis_sample_has_no_residual(three):
    sample = ProfileSample.on_axis(0.0, 0.0, 0.0, 1.0, True)
    assert sample.K == 1.0
    with pytest.raises(AxisPoint):
        weingarten_residual(sample, UNIT, three)


def test_cusp_sample_leaves_kappa2_undefined():
    sample = ProfileSample.on_axis(0.0, 0.0, math.pi / 4, -1.0, False)
    assert math.isnan(sample.kappa2)
    assert math.isnan(sample.K)


@pytest.mark.parametrize("a, b", [(0.0, 1.0), (1.0, 0.0), (0.0, 0.0)])
def test_zero_coefficients_are_rejected(a, b):
    with pytest.raises(InvalidParams):
        Params(a, b)


def test_params_transformations():
    p = Params(2.0, -1.0)
    assert p.negated() == Params(-2.0, 1.0)
    assert p.flipped() == Params(-2.0, -1.0)
    assert p.scaled(0.5) == Params(1.0, -0.5)
    assert p.denominator(1.0, 1.0) == pytest.approx(1.0)
