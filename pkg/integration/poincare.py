"""Crossings of the horizontal lines theta = const of the phase plane."""

import logging
import math
from typing import Optional

from geometry.params import Params
from integration.integrator import integrate
from integration.orbit import FORWARD, LINE_CROSSING
from integration.settings import DEFAULT_SETTINGS, IntegratorSettings
from integration.stops import LineStop
from phase.plane import equilibrium, section_angle
from phase.point import PhasePoint
from phi.prescribed import PrescribedFunction

logger = logging.getLogger(__name__)


def section_crossing(
    start: PhasePoint,
    direction: str,
    section: float,
    p: Params,
    phi: PrescribedFunction,
    settings: IntegratorSettings = DEFAULT_SETTINGS,
) -> Optional[float]:
    """
    Radius at which the orbit through start first meets theta = section (mod 2 pi).

    A start lying exactly on the section does not count as a crossing.

    Returns:
        The crossing radius, or None when another event ends the orbit first.
    """
    orbit = integrate(start, direction, p, phi, (LineStop((section,)),), settings=settings)
    if orbit.finish_end.kind != LINE_CROSSING:
        logger.debug("no crossing of %.6g from %s: orbit ends %s", section, start, orbit.finish_end)
        return None
    return orbit.finish_end.x


def poincare_return(
    x0: float,
    p: Params,
    phi: PrescribedFunction,
    settings: IntegratorSettings = DEFAULT_SETTINGS,
) -> Optional[float]:
    """
    Next crossing of the section through e0, starting from (x0, section).

    The section is theta = pi/2 when a phi(0) > 0 and 3pi/2 otherwise. For an
    unduloid seed this is the crossing on the other side of e0.

    Args:
        x0: Radius on the section.
        p: Coefficients.
        phi: Prescribed function.
        settings: Integrator settings.

    Returns:
        The return radius, or None if the orbit leaves through the axis or S.
    """
    e0 = equilibrium(p, phi)
    if e0 is not None and math.isclose(x0, e0.x, rel_tol=1e-12):
        return x0
    section = section_angle(p, phi)
    start = PhasePoint.checked(x0, section, p)
    return section_crossing(start, FORWARD, section, p, phi, settings)
