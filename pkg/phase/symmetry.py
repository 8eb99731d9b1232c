"""Symmetries of the phase plane.

Two maps send orbits to orbits:

* the reflection about a line theta = L with L = pi/2 or 3pi/2 (mod 2 pi),
  valid because phi is even;
* the orientation flip (x, theta, s) -> (x, theta + pi, -s), which turns
  orbits of (a, b, phi) into orbits of (-a, b, phi).

``normalize`` combines the flip with rescalings that leave the orbits
unchanged, so that classification only ever sees a > 0.
"""

import logging
import math
from dataclasses import replace
from typing import Optional, Tuple

from geometry.curvature import ProfileSample
from geometry.params import Params
from integration.orbit import EndpointKind, Orbit
from phase.plane import ELLIPTIC, HYPERBOLIC, require_character
from phase.point import PhasePoint
from phi.prescribed import PrescribedFunction
from utils.constants import TWO_PI
from utils.errors import SpansBothHalves

logger = logging.getLogger(__name__)

HALF_TOL = 1e-12


def reflection_line(orbit: Orbit) -> float:
    """
    The copy of pi/2 (upper half) or 3pi/2 (lower half) the orbit winds around.

    Raises:
        SpansBothHalves: If sin(theta) takes both signs on the orbit.
    """
    sines = [math.sin(sample.theta) for sample in orbit.samples]
    if all(value >= -HALF_TOL for value in sines):
        base = math.pi / 2
    elif all(value <= HALF_TOL for value in sines):
        base = 3 * math.pi / 2
    else:
        raise SpansBothHalves()
    reference = orbit.samples[len(orbit.samples) // 2].theta
    return base + TWO_PI * round((reference - base) / TWO_PI)


def _reflect_sample(sample: ProfileSample, line: float) -> ProfileSample:
    theta = 2 * line - sample.theta
    return replace(sample, s=-sample.s, z=-sample.z, theta=theta, angle_fn=math.cos(theta))


def _reflect_end(end: EndpointKind, line: float) -> EndpointKind:
    theta = None if end.theta is None else 2 * line - end.theta
    s = None if end.s is None else -end.s
    return replace(end, theta=theta, s=s)


def reflect(orbit: Orbit) -> Orbit:
    """
    Mirror image of an orbit in the line theta = pi/2 or 3pi/2.

    The reflected curve is traversed with s -> -s, so the sample list is
    reversed and the two ends swap. Curvatures are unchanged.

    Args:
        orbit: Orbit confined to one half of the phase plane.

    Returns:
        The reflected orbit.

    Raises:
        SpansBothHalves: If the orbit visits both halves.
    """
    if not orbit.samples:
        return orbit
    line = reflection_line(orbit)
    samples = [_reflect_sample(sample, line) for sample in reversed(orbit.samples)]
    return Orbit(
        samples,
        _reflect_end(orbit.finish_end, line),
        _reflect_end(orbit.start_end, line),
        orbit.params,
        orbit.phi_id,
        orbit.closed,
        dict(orbit.stats),
    )


def reflect_point(pt: PhasePoint) -> PhasePoint:
    """Reflection of a single point in the line of its own half-plane."""
    line = math.pi / 2 if math.sin(pt.theta) >= 0 else 3 * math.pi / 2
    line += TWO_PI * round((pt.theta - line) / TWO_PI)
    return PhasePoint(pt.x, 2 * line - pt.theta)


def flip_point(pt: PhasePoint) -> PhasePoint:
    return PhasePoint(pt.x, pt.theta + math.pi)


def _flip_sample(sample: ProfileSample) -> ProfileSample:
    theta = sample.theta + math.pi
    return replace(
        sample,
        s=-sample.s,
        theta=theta,
        kappa1=-sample.kappa1,
        kappa2=-sample.kappa2,
        H=-sample.H,
        angle_fn=math.cos(theta),
    )


def _flip_end(end: EndpointKind) -> EndpointKind:
    theta = None if end.theta is None else end.theta + math.pi
    s = None if end.s is None else -end.s
    return replace(end, theta=theta, s=s)


def flip_orbit(orbit: Orbit) -> Orbit:
    """
    Orientation flip of an orbit: an orbit of (a, b, phi) becomes one of (-a, b, phi).

    Sample order and ends are kept, so arc length runs the other way along the list.
    K and z are invariant; kappa1, kappa2 and H change sign.
    """
    return Orbit(
        [_flip_sample(sample) for sample in orbit.samples],
        _flip_end(orbit.start_end),
        _flip_end(orbit.finish_end),
        orbit.params.flipped(),
        orbit.phi_id,
        orbit.closed,
        dict(orbit.stats),
    )


def normalize(p: Params, phi: PrescribedFunction) -> Tuple[Params, PrescribedFunction, bool]:
    """
    Brings (a, b, phi) to the form the classifiers work with.

    Elliptic data with phi < 0 becomes (-a, -b, -phi); hyperbolic data becomes
    (a/b, 1, phi/b). Both leave every orbit unchanged. If a is still negative
    the orientation flip is applied and reported.

    Args:
        p: Coefficients.
        phi: Prescribed function.

    Returns:
        (normalized params, normalized phi, whether the flip was applied).

    Raises:
        CharacterViolation: For parabolic or mixed data.
    """
    character = require_character(p, phi)
    if character.kind == ELLIPTIC and phi(0.0) < 0:
        p, phi = p.negated(), phi.scaled(-1.0)
    elif character.kind == HYPERBOLIC and p.b != 1.0:
        factor = 1.0 / p.b
        p, phi = Params(p.a * factor, 1.0), phi.scaled(factor)
    flip = p.a < 0
    if flip:
        p = p.flipped()
    logger.debug("normalized to a = %g, b = %g, phi = %s (flip: %s)", p.a, p.b, phi.text, flip)
    return p, phi, flip


def to_caller_frame(orbit: Orbit, flip: bool, original: Optional[Params] = None) -> Orbit:
    """Undoes the orientation flip of ``normalize`` on a computed orbit."""
    if not flip:
        return orbit if original is None else replace(orbit, params=original)
    flipped = flip_orbit(orbit)
    return flipped if original is None else replace(flipped, params=original)
