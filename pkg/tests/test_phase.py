import math

import numpy as np
import pytest

from geometry.curvature import ProfileSample
from geometry.params import Params
from integration.orbit import START, TRUNCATED, EndpointKind, Orbit
from phase.plane import (
    ABOVE,
    ABSENT,
    BELOW,
    ELLIPTIC,
    HYPERBOLIC,
    MIXED,
    PARABOLIC,
    constant_crossing,
    equilibrium,
    first_integral_residual,
    linearization_at_e0,
    nullcline,
    pde_character,
    region_of,
    singular_curve,
    sphere_radius,
    zero_phi_landmark,
)
from phase.point import PhasePoint, reduce_angle
from phase.symmetry import flip_orbit, flip_point, normalize, reflect, reflect_point, to_caller_frame
from phi.prescribed import load_phi
from utils.errors import AxisPoint, CharacterViolation, NearSingular, NotApplicable, OnBoundary, SpansBothHalves

UNIT = Params(1.0, 1.0)


def _orbit(thetas, radii=None, p=UNIT):
    radii = radii if radii is not None else [0.5] * len(thetas)
    samples = [
        ProfileSample.at(float(i), x, 0.1 * i, theta, 1.0)
        for i, (x, theta) in enumerate(zip(radii, thetas))
    ]
    return Orbit(
        samples,
        EndpointKind(START, thetas[0], radii[0], 0.0),
        EndpointKind(TRUNCATED, thetas[-1], radii[-1], float(len(thetas) - 1)),
        p,
        "3",
    )


def test_reduce_angle():
    assert reduce_angle(-math.pi / 2) == pytest.approx(3 * math.pi / 2)
    assert reduce_angle(5 * math.pi) == pytest.approx(math.pi)
    assert reduce_angle(2 * math.pi) == 0.0


def test_phase_point_needs_positive_radius():
    with pytest.raises(AxisPoint):
        PhasePoint(0.0, 1.0)


def test_checked_point_rejects_the_singular_curve():
    with pytest.raises(NearSingular):
        PhasePoint.checked(1.0, 3 * math.pi / 2, UNIT)


def test_winding_and_half():
    pt = PhasePoint(1.0, 2 * math.pi + 3 * math.pi / 4)
    assert pt.winding == 1
    assert pt.half == 1
    assert PhasePoint(1.0, 5 * math.pi / 4).half == 2
    assert PhasePoint(1.0, math.pi).half == 0


def test_singular_curve_lives_below_for_positive_b():
    assert singular_curve(3 * math.pi / 2, UNIT) == pytest.approx(1.0)
    assert singular_curve(math.pi / 2, UNIT) is None
    assert singular_curve(math.pi / 2, Params(1.0, -2.0)) == pytest.approx(2.0)


def test_nullcline():
    three = load_phi("3")
    assert nullcline(math.pi / 2, UNIT, three) == pytest.approx(1 / 3)
    assert nullcline(3 * math.pi / 2, UNIT, three) is None


def test_equilibrium_for_positive_phi():
    e0 = equilibrium(UNIT, load_phi("3"))
    assert (e0.x, e0.theta) == pytest.approx((1 / 3, math.pi / 2))


def test_equilibrium_for_negative_phi():
    e0 = equilibrium(UNIT, load_phi("-3"))
    assert (e0.x, e0.theta) == pytest.approx((1 / 3, 3 * math.pi / 2))


def test_equilibrium_uses_phi_at_zero():
    e0 = equilibrium(Params(2.0, 1.0), load_phi("2 + y^2"))
    assert (e0.x, e0.theta) == pytest.approx((1.0, math.pi / 2))


def test_no_equilibrium_when_phi_vanishes():
    assert equilibrium(UNIT, load_phi("0", allow_vanishing=True)) is None


@pytest.mark.parametrize("phi, kind", [
    ("3", ELLIPTIC),
    ("-3", HYPERBOLIC),
    ("-1", PARABOLIC),
    ("-0.5 - y^2", MIXED),
])
def test_pde_character(phi, kind):
    assert pde_character(UNIT, load_phi(phi)).kind == kind


def test_mixed_character_must_be_refused():
    with pytest.raises(CharacterViolation) as info:
        pde_character(UNIT, load_phi("-0.5 - y^2")).require_definite()
    assert info.value.kind == MIXED


def test_linearization_at_e0():
    np.testing.assert_allclose(linearization_at_e0(UNIT, load_phi("3")), [[0, -1], [9 / 4, 0]], atol=1e-12)
    np.testing.assert_allclose(linearization_at_e0(UNIT, load_phi("2")), [[0, -1], [4 / 3, 0]], atol=1e-12)


def test_linearization_needs_a_positive_discriminant():
    with pytest.raises(NotApplicable):
        linearization_at_e0(UNIT, load_phi("-3"))


def test_first_integral_along_the_sphere():
    start = PhasePoint(math.sin(0.3), 0.3)
    later = PhasePoint(math.sin(1.2), 1.2)
    assert first_integral_residual(start, later, UNIT, 3.0) == pytest.approx(0.0, abs=1e-14)
    off = PhasePoint(1.0, 1.2)
    assert abs(first_integral_residual(start, off, UNIT, 3.0)) > 1e-2


def test_sphere_radius():
    assert sphere_radius(UNIT, 3.0) == pytest.approx(1.0)
    assert sphere_radius(UNIT, 1.0) == pytest.approx(1 + math.sqrt(2))
    assert sphere_radius(UNIT, -3.0) is None


def test_constant_crossing():
    assert constant_crossing(UNIT, -1.5) == pytest.approx(4 / 3)
    assert constant_crossing(UNIT, -2.0) is None
    assert constant_crossing(UNIT, -3.0) is None


def test_zero_phi_landmark():
    assert zero_phi_landmark(UNIT, 7 * math.pi / 4) == pytest.approx(0.25)


def test_region_in_the_upper_half():
    region = region_of(PhasePoint(0.1, math.pi / 4), UNIT, load_phi("3"))
    assert region.half == 1
    assert region.gamma_side == BELOW
    assert region.s_side == ABSENT
    assert region.quadrant == 0
    assert region.x_prime_sign == 1
    assert region.theta_prime_sign == -1
    assert region.label == "Theta1/Gamma:below/S:absent/Q0"


def test_region_in_the_lower_half():
    region = region_of(PhasePoint(2.0, 5 * math.pi / 4), UNIT, load_phi("3"))
    assert region.half == 2
    assert region.gamma_side == ABSENT
    assert region.s_side == ABOVE
    assert region.quadrant == 2
    assert region.x_prime_sign == -1
    assert region.theta_prime_sign == 1


@pytest.mark.parametrize("pt", [PhasePoint(1.0, math.pi), PhasePoint(0.7, 3 * math.pi / 2)])
def test_region_boundary_is_reported(pt):
    with pytest.raises(OnBoundary):
        region_of(pt, UNIT, load_phi("3"))


def test_reflect_upper_half():
    reflected = reflect(_orbit([math.pi / 4, math.pi / 3, 0.4 * math.pi]))
    assert reflected.samples[-1].theta == pytest.approx(3 * math.pi / 4)
    assert reflected.samples[0].theta == pytest.approx(0.6 * math.pi)
    assert reflected.finish_end.theta == pytest.approx(3 * math.pi / 4)
    assert reflected.samples[-1].z == pytest.approx(-0.0)


def test_reflect_lower_half():
    reflected = reflect(_orbit([7 * math.pi / 4, 1.6 * math.pi, 1.55 * math.pi]))
    assert reflected.samples[-1].theta == pytest.approx(5 * math.pi / 4)


def test_reflect_twice_is_identity():
    orbit = _orbit([math.pi / 4, math.pi / 3, 0.4 * math.pi], radii=[0.5, 0.6, 0.7])
    twice = reflect(reflect(orbit))
    np.testing.assert_allclose(twice.theta, orbit.theta)
    np.testing.assert_allclose(twice.s, orbit.s)
    np.testing.assert_allclose(twice.x, orbit.x)


def test_reflect_refuses_orbits_in_both_halves():
    with pytest.raises(SpansBothHalves):
        reflect(_orbit([math.pi / 4, 7 * math.pi / 4]))


def test_reflect_point():
    assert reflect_point(PhasePoint(1.0, math.pi / 4)).theta == pytest.approx(3 * math.pi / 4)
    assert reflect_point(PhasePoint(1.0, 7 * math.pi / 4)).theta == pytest.approx(5 * math.pi / 4)


def test_flip_keeps_gauss_curvature_and_height():
    orbit = _orbit([math.pi / 4, math.pi / 3], radii=[0.5, 0.8])
    flipped = flip_orbit(orbit)
    assert flipped.params == Params(-1.0, 1.0)
    for before, after in zip(orbit.samples, flipped.samples):
        assert after.K == pytest.approx(before.K)
        assert after.z == before.z
        assert after.H == pytest.approx(-before.H)
        assert after.theta == pytest.approx(before.theta + math.pi)
    assert flip_point(PhasePoint(1.0, 0.2)).theta == pytest.approx(0.2 + math.pi)


def test_to_caller_frame_undoes_the_flip():
    orbit = _orbit([math.pi / 4, math.pi / 3])
    back = to_caller_frame(flip_orbit(orbit), True, UNIT)
    np.testing.assert_allclose(back.theta, orbit.theta + 2 * math.pi)
    assert back.params == UNIT


def test_normalize_keeps_normalized_data():
    p, phi, flip = normalize(UNIT, load_phi("3"))
    assert p == UNIT and phi(0.0) == 3.0 and not flip


def test_normalize_flips_negative_a():
    p, phi, flip = normalize(Params(-1.0, 1.0), load_phi("3"))
    assert p == UNIT and flip


def test_normalize_negates_negative_elliptic_phi():
    p, phi, flip = normalize(Params(2.0, -2.0), load_phi("-3"))
    assert p == Params(2.0, 2.0)
    assert phi(0.0) == pytest.approx(3.0)
    assert flip


def test_normalize_sets_b_to_one_for_hyperbolic_data():
    p, phi, flip = normalize(Params(1.0, 2.0), load_phi("-3"))
    assert p == Params(0.5, 1.0)
    assert phi(0.0) == pytest.approx(-1.5)
    assert not flip


def test_normalize_refuses_parabolic_data():
    with pytest.raises(CharacterViolation):
        normalize(UNIT, load_phi("-1"))
