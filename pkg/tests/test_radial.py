import math

import numpy as np
import pytest

from geometry.params import Params
from integration.orbit import AXIS_ORTHOGONAL, BACKWARD, FORWARD
from phi.prescribed import load_phi
from radial.continuation import graph_samples, radial_orbit
from radial.solver import (
    DOWN,
    UP,
    RadialSolution,
    apply_T,
    default_delta,
    radial_grid,
    seed_orbit,
    solve_radial,
    solve_radial_shrinking,
)
from utils.errors import DomainExit, NotApplicable

UNIT = Params(1.0, 1.0)


def _cap(r):
    return 1.0 - np.sqrt(1.0 - r ** 2)


@pytest.fixture
def three():
    return load_phi("3")


def test_unit_sphere_cap(three):
    sol = solve_radial(UNIT, three, 0.3)
    assert np.max(np.abs(sol.u - _cap(sol.grid))) < 1e-8
    assert sol.u[0] == 0.0
    assert sol.uprime[0] == 0.0


def test_down_orientation_mirrors_the_cap(three):
    up = solve_radial(UNIT, three, 0.3)
    down = solve_radial(UNIT, three, 0.3, DOWN)
    assert down.orientation == DOWN
    np.testing.assert_allclose(down.u, -up.u)
    np.testing.assert_allclose(down.angles, math.pi - up.angles)


def test_seed_at_the_rim(three):
    sol = solve_radial(UNIT, three, 0.3)
    seed, direction = seed_orbit(sol)
    assert seed.x == pytest.approx(0.3)
    assert seed.theta == pytest.approx(math.asin(0.3), abs=1e-8)
    assert direction == FORWARD
    _, direction = seed_orbit(sol.reflected())
    assert direction == BACKWARD


@pytest.mark.parametrize("delta", [1.0, 1.2])
def test_too_wide_graph_leaves_the_domain(three, delta):
    with pytest.raises(DomainExit):
        solve_radial(UNIT, three, delta)


def test_first_step_from_the_flat_graph(three):
    grid = radial_grid(0.3, 64)
    flat = RadialSolution(0.3, grid, np.zeros_like(grid), np.zeros_like(grid))
    step = apply_T(flat, UNIT, three)
    # slope coefficient (a/b)(sqrt(1 + b phi(1)/a^2) - 1) = 1
    np.testing.assert_allclose(step.uprime, grid / np.sqrt(1.0 - grid ** 2), atol=1e-12)


def test_residual_for_a_non_constant_phi():
    phi = load_phi("2 + y^2")
    sol = solve_radial(UNIT, phi)
    assert sol.delta == pytest.approx(default_delta(UNIT, phi))
    assert np.max(np.abs(sol.residuals(UNIT, phi))) < 1e-6


def test_contraction_ratios_below_one(three):
    sol = solve_radial(UNIT, three)
    assert sol.iterations > 1
    assert sol.contracting


def test_default_delta(three):
    assert default_delta(UNIT, three) == pytest.approx(0.1 / 3)
    assert default_delta(Params(1.0, 0.5), load_phi("1")) == pytest.approx(0.05)


def test_radial_solver_needs_elliptic_data():
    with pytest.raises(NotApplicable):
        solve_radial(UNIT, load_phi("-3"))


def test_shrinking_finds_a_working_delta(three):
    sol = solve_radial_shrinking(UNIT, three)
    assert 0 < sol.delta <= default_delta(UNIT, three)


def test_graph_samples_start_on_the_axis(three):
    sol = solve_radial(UNIT, three, 0.3, n=128)
    samples = graph_samples(sol)
    assert samples[0].x == 0.0
    assert samples[0].K == pytest.approx(samples[0].kappa1 ** 2)
    assert len(samples) == sol.n
    assert all(b.s > a.s for a, b in zip(samples, samples[1:]))


def test_radial_orbit_is_the_sphere(three):
    orbit = radial_orbit(UNIT, three)
    assert orbit.start_end.kind == AXIS_ORTHOGONAL
    assert orbit.finish_end.kind == AXIS_ORTHOGONAL
    assert orbit.finish_end.theta == pytest.approx(math.pi, abs=1e-5)
    interior = [sample for sample in orbit.samples if sample.x > 0]
    assert max(abs(sample.z - (1 - math.cos(sample.theta))) for sample in interior) < 1e-5
    assert orbit.stats["picard_iterations"] > 0
    assert orbit.stats["picard_contracting"]


@pytest.mark.slow
def test_doubling_the_grid_quarters_the_error(three):
    errors = []
    for n in (64, 128, 256):
        sol = solve_radial(UNIT, three, 0.3, n=n)
        errors.append(np.max(np.abs(sol.u - _cap(sol.grid))))
    assert errors[0] / errors[1] >= 3.5
    assert errors[1] / errors[2] >= 3.5
