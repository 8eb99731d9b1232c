"""Identification of the way an orbit ends: axis, singular curve or neither."""

import math
from typing import Sequence

import numpy as np

from geometry.curvature import ProfileSample
from geometry.params import Params
from integration.orbit import AXIS_CUSP, AXIS_ORTHOGONAL, SINGULAR_CIRCLE, EndpointKind
from integration.settings import DEFAULT_SETTINGS, IntegratorSettings
from phi.prescribed import PrescribedFunction
from utils.errors import Ambiguous, StepUnderflow


def wall_ratio(x: float, theta: float, p: Params) -> float:
    """|a x + b sin theta| normalised so that it stays O(1) near the axis."""
    sin_theta = math.sin(theta)
    scale = abs(p.a) * abs(x) + abs(p.b) * abs(sin_theta)
    if scale == 0.0:
        return 1.0
    return abs(p.a * x + p.b * sin_theta) / scale


def axis_limit(trail: Sequence[ProfileSample]) -> float:
    """Extrapolates theta linearly in x down to x = 0."""
    last = trail[-1]
    cos_theta = math.cos(last.theta)
    if abs(cos_theta) > 1e-3 and math.isfinite(last.kappa1):
        return last.theta - last.x * last.kappa1 / cos_theta
    if len(trail) >= 2 and trail[-2].x != last.x:
        previous = trail[-2]
        slope = (last.theta - previous.theta) / (last.x - previous.x)
        return last.theta - last.x * slope
    return last.theta


def singular_limit(trail: Sequence[ProfileSample], p: Params):
    """
    Extrapolates (theta*, x*) to a x + b sin theta = 0 from the last samples.

    The limit angle is smooth as a function of the denominator D, so a
    polynomial in D through the last three samples is evaluated at D = 0.

    Returns:
        Tuple (theta*, x*, order).
    """
    tail = list(trail[-3:])
    d = np.array([p.denominator(sample.x, math.sin(sample.theta)) for sample in tail])
    thetas = np.array([sample.theta for sample in tail])
    xs = np.array([sample.x for sample in tail])
    order = len(np.unique(d)) - 1
    if order < 1:
        return float(thetas[-1]), float(xs[-1]), 0
    d, thetas, xs = d[-order - 1:], thetas[-order - 1:], xs[-order - 1:]
    theta_star = float(np.polyval(np.polyfit(d, thetas, order), 0.0))
    x_star = float(np.polyval(np.polyfit(d, xs, order), 0.0))
    return theta_star, x_star, order


def axis_endpoint(trail: Sequence[ProfileSample], settings: IntegratorSettings = DEFAULT_SETTINGS) -> EndpointKind:
    """Axis end of an orbit whose last sample lies next to x = 0."""
    last = trail[-1]
    limit = axis_limit(trail)
    if abs(math.sin(limit)) <= settings.eps_orth:
        return EndpointKind(AXIS_ORTHOGONAL, limit, 0.0, last.s)
    return EndpointKind(AXIS_CUSP, limit, 0.0, last.s)


def touch_endpoint(sample: ProfileSample) -> EndpointKind:
    """Axis end reached tangentially, at a minimum of x next to the axis."""
    return EndpointKind(AXIS_CUSP, sample.theta, 0.0, sample.s, {"approach": "tangential"})


def wall_endpoint(
    trail: Sequence[ProfileSample],
    p: Params,
    settings: IntegratorSettings = DEFAULT_SETTINGS,
) -> EndpointKind:
    """
    Singular-circle end of an orbit whose last sample lies next to S.

    Raises:
        Ambiguous: If the extrapolated limit is on the axis.
    """
    theta_star, x_star, order = singular_limit(trail, p)
    if x_star <= settings.eps_pole:
        raise Ambiguous(x_star, theta_star)
    detail = {"extrapolation": "polynomial in a*x + b*sin(theta)", "order": order}
    return EndpointKind(SINGULAR_CIRCLE, theta_star, x_star, trail[-1].s, detail)


def detect_endpoint(
    trail: Sequence[ProfileSample],
    p: Params,
    phi: PrescribedFunction,
    settings: IntegratorSettings = DEFAULT_SETTINGS,
    slack: float = 1.0,
) -> EndpointKind:
    """
    Decides how an orbit ends from its most recent samples.

    Located events already know their wall and go straight to
    ``axis_endpoint`` or ``wall_endpoint``; this is for a step that collapses
    without an event, where the last state is compared with the walls.

    Args:
        trail: Recent samples, oldest first; the last one is the end state.
        p: Coefficients.
        phi: Prescribed function.
        settings: Wall thresholds.
        slack: Factor widening the thresholds.

    Returns:
        AxisOrthogonal, AxisCusp or SingularCircle with the extrapolated limit.

    Raises:
        Ambiguous: If the last state is close to both the axis and S.
        StepUnderflow: If it is close to neither.
    """
    last = trail[-1]
    near_axis = last.x <= settings.eps_pole * slack
    near_wall = wall_ratio(last.x, last.theta, p) <= settings.eps_wall * slack
    if near_axis and near_wall:
        raise Ambiguous(last.x, last.theta)
    if near_axis:
        return axis_endpoint(trail, settings)
    if near_wall:
        return wall_endpoint(trail, p, settings)
    raise StepUnderflow(last.s, last.x, last.theta)
