import logging
import math
from dataclasses import replace
from typing import List, Optional

from geometry.curvature import ProfileSample
from geometry.params import Params
from integration.integrator import integrate
from integration.orbit import AXIS_ORTHOGONAL, EndpointKind, Orbit
from integration.settings import DEFAULT_SETTINGS, IntegratorSettings
from integration.stops import Stops
from phi.prescribed import PrescribedFunction
from radial.solver import UP, RadialSolution, seed_orbit, solve_radial_shrinking

logger = logging.getLogger(__name__)


def graph_samples(sol: RadialSolution) -> List[ProfileSample]:
    """
    Profile samples of the radial graph, axis first, rim excluded.

    Arc length is measured from the axis, growing outward for ``up`` and
    decreasing outward for ``down``.
    """
    sign = 1.0 if sol.orientation == UP else -1.0
    arcs = sign * sol.arc_length()
    thetas = sol.angles
    kappas = sol.kappa1()
    samples = [ProfileSample.on_axis(0.0, float(sol.u[0]), float(thetas[0]), float(kappas[0]), True)]
    for i in range(1, sol.n):
        samples.append(ProfileSample.at(
            float(arcs[i]), float(sol.grid[i]), float(sol.u[i]), float(thetas[i]), float(kappas[i]),
        ))
    return samples


def _shift(sample: ProfileSample, ds: float, dz: float) -> ProfileSample:
    return replace(sample, s=sample.s + ds, z=sample.z + dz)


def radial_orbit(
    p: Params,
    phi: PrescribedFunction,
    orientation: str = UP,
    stops: Stops = (),
    s_max: Optional[float] = None,
    settings: IntegratorSettings = DEFAULT_SETTINGS,
    solution: Optional[RadialSolution] = None,
) -> Orbit:
    """
    The orbit leaving the axis orthogonally: the radial graph continued by the integrator.

    Args:
        p: Elliptic coefficients.
        phi: Prescribed function.
        orientation: ``up`` for the orbit ending at (0, 0), ``down`` for (0, pi).
        stops: Events for the continuation.
        s_max: Arc-length budget of the continuation.
        settings: Integrator settings.
        solution: A precomputed radial solution; solved with delta halving otherwise.

    Returns:
        One orbit whose first sample is the axis point.
    """
    sol = solution or solve_radial_shrinking(p, phi, orientation)
    seed, direction = seed_orbit(sol)
    continued = integrate(seed, direction, p, phi, stops, s_max, settings)

    rim_arc = float(sol.arc_length()[-1]) * (1.0 if sol.orientation == UP else -1.0)
    rim_height = float(sol.u[-1])
    tail = [_shift(sample, rim_arc, rim_height) for sample in continued.samples]
    finish = continued.finish_end
    if finish.s is not None:
        finish = replace(finish, s=finish.s + rim_arc)

    axis_angle = 0.0 if sol.orientation == UP else math.pi
    start = EndpointKind(AXIS_ORTHOGONAL, axis_angle, 0.0, 0.0)
    stats = dict(continued.stats)
    stats["radial_delta"] = sol.delta
    stats["picard_iterations"] = sol.iterations
    stats["picard_contracting"] = sol.contracting
    logger.debug("radial orbit (%s) from delta = %g ends %s", sol.orientation, sol.delta, finish)
    return Orbit(graph_samples(sol) + tail, start, finish, p, continued.phi_id, continued.closed, stats)
