"""Starting an orbit at a point of the rotation axis.

At (0, theta0) with sin(theta0) != 0 the system has a finite limit
theta' = -a/b, so a second-order Taylor step moves the start a small arc
length into the open half-plane x > 0.
"""

import logging
import math
from typing import Optional, Tuple

from geometry.curvature import ProfileSample
from geometry.params import Params
from integration.integrator import integrate
from integration.orbit import AXIS_CUSP, AXIS_ORTHOGONAL, BACKWARD, FORWARD, EndpointKind, Orbit
from integration.settings import DEFAULT_SETTINGS, IntegratorSettings
from integration.stops import Stops
from phase.point import PhasePoint
from phi.prescribed import PrescribedFunction
from utils.constants import AXIS_SEED_ARC, AXIS_SEED_ARC_TANGENT
from utils.errors import NotApplicable

logger = logging.getLogger(__name__)

TANGENT_COS = 1e-3


def axis_derivatives(theta0: float, p: Params, phi: PrescribedFunction) -> Tuple[float, float]:
    """
    theta' and theta'' at the axis point (0, theta0).

    Raises:
        NotApplicable: If sin(theta0) = 0 (orthogonal axis points need the radial solver).
    """
    sin0 = math.sin(theta0)
    if abs(sin0) < 1e-12:
        raise NotApplicable("axis seeds need sin(theta0) != 0; use the radial seed instead")
    cos0 = math.cos(theta0)
    first = -p.a / p.b
    second = cos0 * (phi(cos0) + p.a ** 2 / p.b) / (p.b * sin0)
    return first, second


def axis_seed(
    theta0: float,
    p: Params,
    phi: PrescribedFunction,
    direction: Optional[str] = None,
) -> Tuple[PhasePoint, str]:
    """
    Moves a small arc length off the axis point (0, theta0).

    Args:
        theta0: Angle at the axis.
        p: Coefficients.
        phi: Prescribed function.
        direction: Forced integration direction. By default the side where
            x grows is chosen; when theta0 is tangent to the axis both sides
            grow and the default is the direction in which theta increases.

    Returns:
        (seed point, direction in which to integrate away from the axis).
    """
    first, second = axis_derivatives(theta0, p, phi)
    cos0, sin0 = math.cos(theta0), math.sin(theta0)
    tangent = abs(cos0) < TANGENT_COS
    if tangent and sin0 * first >= 0:
        raise NotApplicable(f"no orbit leaves the axis tangentially at theta0 = {theta0:.9g}")
    arc = AXIS_SEED_ARC_TANGENT if tangent else AXIS_SEED_ARC
    if direction is None:
        if tangent:
            direction = FORWARD if first > 0 else BACKWARD
        else:
            direction = FORWARD if cos0 > 0 else BACKWARD
    s = arc if direction == FORWARD else -arc
    x = cos0 * s - sin0 * first * s * s / 2
    theta = theta0 + first * s + second * s * s / 2
    logger.debug("axis seed from theta0 = %.9g: (%.6g, %.12g) going %s", theta0, x, theta, direction)
    return PhasePoint(x, theta), direction


def integrate_from_axis(
    theta0: float,
    p: Params,
    phi: PrescribedFunction,
    stops: Stops = (),
    direction: Optional[str] = None,
    s_max: Optional[float] = None,
    settings: IntegratorSettings = DEFAULT_SETTINGS,
) -> Orbit:
    """
    Integrates the orbit leaving the axis at angle theta0.

    The returned orbit starts with the axis sample itself, so its start end is
    the axis point (a cusp unless theta0 is a multiple of pi).

    Returns:
        The orbit, samples ordered from the axis outward.
    """
    seed, direction = axis_seed(theta0, p, phi, direction)
    orbit = integrate(seed, direction, p, phi, stops, s_max, settings)

    first, _ = axis_derivatives(theta0, p, phi)
    s_seed = AXIS_SEED_ARC_TANGENT if abs(math.cos(theta0)) < TANGENT_COS else AXIS_SEED_ARC
    s_seed = s_seed if direction == FORWARD else -s_seed
    z_seed = math.sin(theta0) * s_seed + math.cos(theta0) * first * s_seed * s_seed / 2
    orthogonal = abs(math.sin(theta0)) <= settings.eps_orth
    axis = ProfileSample.on_axis(-s_seed, -z_seed, theta0, first, orthogonal)
    kind = AXIS_ORTHOGONAL if orthogonal else AXIS_CUSP
    start = EndpointKind(kind, theta0, 0.0, -s_seed)
    return Orbit([axis] + orbit.samples, start, orbit.finish_end, p, orbit.phi_id, orbit.closed, orbit.stats)
