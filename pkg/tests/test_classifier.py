import math

import numpy as np
import pytest

from classifier.classify import classify, classify_sweep, hyperbolic_classify
from classifier.families import CHANGES, NEGATIVE, POSITIVE, ZERO, Family
from classifier.hyperbolic_classifier import REGIME_ANNULUS, REGIME_BEYOND, REGIME_CUSP
from classifier.seed import AXIS, EQUILIBRIUM, RADIAL, SECTION, Seed, parse_seed
from classifier.signature import first_integral_drift, gauss_sign_profile, height_monotonicity, is_complete
from classifier.thresholds import (
    aitken,
    bisect_boundary,
    estimate_x1_infinity,
    find_x1_infinity,
    find_x_infinity,
    find_x_plus,
    nodoid_return,
    thresholds,
)
from geometry.params import Params
from phi.prescribed import load_phi
from utils.errors import AtSingularRadius, CharacterViolation, ConfigError, NoCrossing, NotApplicable

UNIT = Params(1.0, 1.0)
THREE_HALVES_PI = 3 * math.pi / 2


@pytest.fixture
def three():
    return load_phi("3")


def _family(p, phi, seed):
    verdict, _ = classify(p, phi, seed)
    return verdict


def test_equilibrium_is_a_cylinder(three):
    verdict = _family(UNIT, three, Seed.equilibrium())
    assert verdict.family == Family.CYLINDER
    assert verdict.parameters["radius"] == pytest.approx(1 / 3)
    assert verdict.complete
    assert verdict.gauss_sign == ZERO


def test_small_neck_is_an_unduloid(three):
    verdict, orbit = classify(UNIT, three, Seed.section(1 / 6))
    assert verdict.family == Family.UNDULOID
    assert verdict.parameters["neck"] == pytest.approx(1 / 6)
    assert verdict.complete
    assert verdict.height_monotone
    assert verdict.verdict() == "Unduloid neck=0.1666667 complete=true"
    assert orbit.closed


def test_radial_seed_is_the_unit_sphere(three):
    verdict = _family(UNIT, three, Seed.radial())
    assert verdict.family == Family.SPHERE
    assert verdict.parameters["radius"] == pytest.approx(1.0, abs=1e-6)
    assert verdict.gauss_sign == POSITIVE


@pytest.mark.parametrize("x1", [1.2, 1.5, 2.0])
def test_seeds_beyond_the_wall_are_nodoids(three, x1):
    verdict = _family(UNIT, three, Seed.section(x1, THREE_HALVES_PI))
    assert verdict.family == Family.NODOID
    assert verdict.complete
    assert not verdict.height_monotone


def test_nodoid_necks_grow_with_the_seed(three):
    necks = [
        _family(UNIT, three, Seed.section(x1, THREE_HALVES_PI)).parameters["neck"]
        for x1 in (1.2, 1.5, 2.0)
    ]
    assert necks == sorted(necks)


def test_axis_seed_with_sign_changing_curvature(three):
    verdict, orbit = classify(UNIT, three, Seed.axis(math.pi / 4))
    assert verdict.family == Family.E18_K_SIGN_CHANGE
    assert verdict.gauss_sign == CHANGES
    profile = gauss_sign_profile(orbit)
    assert profile.pattern == ("-", "+", "-")
    assert profile.crossing_kinds == ("Gamma", "Gamma")
    assert verdict.parameters["theta0"] == pytest.approx(math.pi / 4)
    assert not verdict.complete


def test_axis_seed_in_the_lower_half(three):
    verdict = _family(UNIT, three, Seed.axis(7 * math.pi / 4))
    assert verdict.family == Family.E15_CUSP_MONOTONE
    assert verdict.height_monotone


def test_flipped_orientation_gives_the_same_family(three):
    verdict, orbit = classify(Params(-1.0, 1.0), three, Seed.section(1 / 6))
    assert verdict.family == Family.UNDULOID
    assert verdict.stats["flipped"]
    assert orbit.params == Params(-1.0, 1.0)
    assert all(math.sin(theta) < 0 for theta in orbit.theta)


def test_negative_b_taxonomy():
    p = Params(1.0, -1.0)
    phi = load_phi("0.5")
    assert _family(p, phi, Seed.equilibrium()).family == Family.CYLINDER
    assert _family(p, phi, Seed.radial()).family == Family.SPHERE
    assert _family(p, phi, Seed.section(1.8)).family == Family.UNDULOID
    assert _family(p, phi, Seed.section(2.2)).family == Family.UNDULOID
    assert _family(p, phi, Seed.section(6.0)).family == Family.NODOID


def test_hyperbolic_cylinder():
    verdict = _family(UNIT, load_phi("-3"), Seed.equilibrium())
    assert verdict.family == Family.H2_CYLINDER
    assert verdict.parameters["radius"] == pytest.approx(1 / 3)


def test_hyperbolic_cusps_below_the_cylinder():
    verdict = hyperbolic_classify(UNIT, load_phi("-3"), 0.2)
    assert verdict.family == Family.H1_CUSP_POSITIVE_K
    assert verdict.regime == REGIME_CUSP
    assert verdict.gauss_sign == POSITIVE


def test_hyperbolic_annulus():
    verdict = hyperbolic_classify(UNIT, load_phi("-3"), 0.6)
    assert verdict.family == Family.H3_ANNULUS_NEGATIVE_K
    assert verdict.regime == REGIME_ANNULUS
    assert verdict.gauss_sign == NEGATIVE


def test_hyperbolic_seed_beyond_the_threshold_radius():
    phi = load_phi("-1.5")
    assert hyperbolic_classify(UNIT, phi, 1.2).family == Family.H42_CUSP_SPHERE_LIKE
    verdict = hyperbolic_classify(UNIT, phi, 1.5)
    assert verdict.family == Family.H4_NODOID_COMPLETE
    assert verdict.regime == REGIME_BEYOND


def test_every_seed_beyond_one_over_a_is_complete_for_strong_phi():
    verdict = hyperbolic_classify(UNIT, load_phi("-3"), 2.0)
    assert verdict.family == Family.H4_NODOID_COMPLETE
    assert verdict.complete


def test_hyperbolic_seed_on_the_singular_radius():
    with pytest.raises(AtSingularRadius):
        hyperbolic_classify(UNIT, load_phi("-3"), 1.0)


def test_hyperbolic_classify_refuses_elliptic_data(three):
    with pytest.raises(CharacterViolation):
        hyperbolic_classify(UNIT, three, 2.0)


@pytest.mark.slow
def test_hyperbolic_family_flips_across_x_infinity():
    phi = load_phi("-1.5")
    assert hyperbolic_classify(UNIT, phi, 4 / 3 - 1e-4).family == Family.H42_CUSP_SPHERE_LIKE
    assert hyperbolic_classify(UNIT, phi, 4 / 3 + 1e-4).family == Family.H4_NODOID_COMPLETE


@pytest.mark.parametrize("p, phi, expected", [
    (UNIT, "3", 1.0),
    (UNIT, "1", 1 + math.sqrt(2)),
    (Params(2.0, 1.0), "3", (2 + math.sqrt(7)) / 3),
])
def test_find_x_plus_matches_the_sphere_radius(p, phi, expected):
    assert find_x_plus(p, load_phi(phi)) == pytest.approx(expected, abs=1e-6)


def test_find_x_infinity():
    assert find_x_infinity(UNIT, load_phi("-1.5")) == pytest.approx(4 / 3, abs=1e-6)


@pytest.mark.parametrize("phi", ["-2", "-3"])
def test_find_x_infinity_without_crossing(phi):
    with pytest.raises(NoCrossing):
        find_x_infinity(UNIT, load_phi(phi))


def test_bisect_boundary():
    low, high = bisect_boundary(lambda x: x > 0.3, 0.0, 1.0, tol=1e-9)
    assert low <= 0.3 <= high
    assert high - low <= 1e-9
    with pytest.raises(ValueError):
        bisect_boundary(lambda x: True, 0.0, 1.0)


def test_aitken_accelerates_a_geometric_sequence():
    values = [1 + 0.5 ** k for k in range(6)]
    assert aitken(values)[-1] == pytest.approx(1.0, abs=1e-12)


def test_signature_readouts_of_the_sphere(three):
    _, orbit = classify(UNIT, three, Seed.radial())
    assert height_monotonicity(orbit).monotone
    assert is_complete(orbit)
    assert gauss_sign_profile(orbit).summary == POSITIVE


def test_sweep_keeps_seed_order_and_records_failures(three):
    seeds = [Seed.section(1.5, THREE_HALVES_PI), Seed.equilibrium(), Seed.section(1.0, THREE_HALVES_PI), Seed.section(1 / 6)]
    results = classify_sweep(UNIT, three, seeds, max_workers=2)
    assert [result.seed for result in results] == seeds
    assert results[0].verdict.family == Family.NODOID
    assert results[1].verdict.family == Family.CYLINDER
    assert not results[2].ok
    assert results[2].message.startswith("NearSingular")
    assert results[3].verdict.family == Family.UNDULOID


@pytest.mark.parametrize("text, kind", [
    ("equilibrium", EQUILIBRIUM),
    ("radial", RADIAL),
    ("x=1/6", SECTION),
    ("x = 1.5 @ 3*pi/2", SECTION),
    ("theta=pi/4", AXIS),
])
def test_parse_seed(text, kind):
    assert parse_seed(text).kind == kind


def test_parse_seed_values():
    seed = parse_seed("x=1.5@3*pi/2")
    assert seed.x == pytest.approx(1.5)
    assert seed.theta == pytest.approx(THREE_HALVES_PI)
    assert parse_seed("x=1/6").theta is None
    assert seed.label == "x=1.5@3*pi/2"


@pytest.mark.parametrize("text", ["x=-1", "theta=pi", "somewhere", "x=y"])
def test_bad_seeds(text):
    with pytest.raises(ConfigError):
        parse_seed(text)


def test_nodoid_return_follows_the_first_integral(three):
    # x sin(theta) + sin(theta)^2 / 2 - 3x^2 / 2 is conserved, so x_hat_1 = x1 + 2/3
    assert nodoid_return(1.5, UNIT, three) == pytest.approx(1.5 + 2 / 3, abs=1e-7)


def test_x1_infinity_estimate(three):
    estimate, residual = estimate_x1_infinity(UNIT, three)
    assert estimate == pytest.approx(5 / 3, abs=1e-6)
    assert residual < 1e-6


@pytest.mark.slow
def test_x1_infinity_lies_strictly_beyond_x_plus(three):
    x1_infinity = find_x1_infinity(UNIT, three)
    assert x1_infinity == pytest.approx(5 / 3, abs=1e-5)
    assert x1_infinity > find_x_plus(UNIT, three) + 0.5


def test_x1_infinity_needs_positive_b():
    with pytest.raises(NotApplicable):
        estimate_x1_infinity(Params(1.0, -1.0), load_phi("0.5"))


def test_thresholds_for_elliptic_data(three):
    result = thresholds(UNIT, three)
    assert result.sphere_radius == pytest.approx(1.0)
    assert result.x_plus == pytest.approx(1.0, abs=1e-6)
    assert result.x1_infty == pytest.approx(5 / 3, abs=1e-6)
    assert result.x_infty is None


def test_unduloid_keeps_its_first_integral(three):
    _, orbit = classify(UNIT, three, Seed.section(1 / 6))
    assert first_integral_drift(orbit, 3.0) < 4e-6


ELLIPTIC_FAMILIES = {family for family in Family if not family.value.startswith("H")}


@pytest.mark.parametrize("x1", [1.4, 1.6])
def test_seeds_between_the_walls_end_on_the_singular_curve_twice(three, x1):
    verdict, orbit = classify(UNIT, three, Seed.section(x1))
    assert verdict.family == Family.E17_NON_MONOTONE
    assert orbit.start_end.kind == "SingularCircle"
    assert orbit.finish_end.kind == "SingularCircle"
    assert not verdict.height_monotone


def test_tangential_axis_seed_changes_the_sign_of_k(three):
    verdict, orbit = classify(UNIT, three, Seed.axis(math.pi / 2))
    assert verdict.family == Family.E18_K_SIGN_CHANGE
    assert orbit.finish_end.kind == "AxisCusp"


def test_negative_b_families_off_the_axis():
    p = Params(1.0, -1.0)
    phi = load_phi("0.5")
    assert _family(p, phi, Seed.section(3.0)).family == Family.E18_K_SIGN_CHANGE
    assert _family(p, phi, Seed.axis(5 * math.pi / 4)).family == Family.E17_NON_MONOTONE


def _assert_sweep_classifies_everything(results):
    unclassified = [result.message for result in results if result.message and result.message.startswith("Unclassified")]
    assert unclassified == []
    assert all(result.verdict.family in ELLIPTIC_FAMILIES for result in results if result.ok)


@pytest.mark.slow
@pytest.mark.parametrize("expression", ["3", "2 + y^2"])
def test_elliptic_sweep_leaves_nothing_unclassified(expression):
    phi = load_phi(expression)
    cylinder = 1.0 / phi(0.0)
    seeds = [Seed.section(fraction * cylinder) for fraction in (0.3, 0.6, 0.9)]
    seeds += [Seed.equilibrium(), Seed.radial()]
    seeds += [Seed.section(x1, THREE_HALVES_PI) for x1 in (1.2, 1.5, 2.0)]
    seeds += [Seed.axis(math.pi / 4), Seed.axis(7 * math.pi / 4)]
    results = classify_sweep(UNIT, phi, seeds, max_workers=2)
    _assert_sweep_classifies_everything(results)
    assert sum(result.ok for result in results) >= len(seeds) - 1


@pytest.mark.slow
def test_negative_b_sweep_leaves_nothing_unclassified():
    seeds = [Seed.equilibrium(), Seed.radial()]
    seeds += [Seed.section(x) for x in (1.8, 2.2, 3.0, 6.0)]
    seeds += [Seed.axis(theta) for theta in (5 * math.pi / 4, 11 * math.pi / 8)]
    results = classify_sweep(Params(1.0, -1.0), load_phi("0.5"), seeds, max_workers=2)
    _assert_sweep_classifies_everything(results)
    assert all(result.ok for result in results)


@pytest.mark.slow
def test_flipped_orientation_agrees_for_random_even_phi():
    rng = np.random.default_rng(11)
    for _ in range(100):
        c0, c2, c4 = rng.uniform(0.5, 3.0, 3)
        phi = load_phi(f"{c0:.6f} + {c2:.6f}*y^2 + {c4:.6f}*y^4")
        seed = Seed.section(0.5 / c0)
        direct = _family(UNIT, phi, seed)
        flipped = _family(UNIT.flipped(), phi, seed)
        assert flipped.family == direct.family


@pytest.mark.slow
def test_hyperbolic_family_flips_inside_a_tight_bracket():
    phi = load_phi("-1.5")
    assert hyperbolic_classify(UNIT, phi, 4 / 3 - 2e-7).family == Family.H42_CUSP_SPHERE_LIKE
    assert hyperbolic_classify(UNIT, phi, 4 / 3 + 2e-7).family == Family.H4_NODOID_COMPLETE
