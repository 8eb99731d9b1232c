"""Event-aware integration of x' = cos(theta), theta' = RHS, z' = sin(theta).

The stepper is scipy's Dormand-Prince 5(4) pair driven one step at a time, so
that the step cap can follow the distance to the singular curve and events
can be located on the dense output of the step that produced them.
"""

import logging
import math
import time
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import RK45

from geometry.curvature import ProfileSample, raw_theta_prime
from geometry.params import Params
from integration.endpoints import axis_endpoint, detect_endpoint, touch_endpoint, wall_endpoint, wall_ratio
from integration.orbit import (
    AXIS_ORTHOGONAL,
    BACKWARD,
    FORWARD,
    LINE_CROSSING,
    PERIODIC_RETURN,
    START,
    TRUNCATED,
    EndpointKind,
    Orbit,
)
from integration.settings import DEFAULT_SETTINGS, IntegratorSettings
from integration.stops import PeriodicStop, Stops
from phase.plane import require_character
from phase.point import PhasePoint
from phi.prescribed import PrescribedFunction
from utils.constants import CONSTANT_ORBIT_TOL

logger = logging.getLogger(__name__)

MIN_STEP_CAP = 1e-15
BISECTION_ITERATIONS = 200

# Event kinds, in the order they are preferred when two land on the same s.
_AXIS = "axis"
_POLE = "pole"
_WALL = "wall"
_TOUCH = "touch"
_STOP = "stop"


def system(p: Params, phi: PrescribedFunction) -> Callable[[float, np.ndarray], np.ndarray]:
    """Right-hand side of the (x, theta, z) system in arc length."""

    def rhs(s: float, y: np.ndarray) -> np.ndarray:
        x, theta = y[0], y[1]
        return np.array([math.cos(theta), raw_theta_prime(x, theta, p, phi), math.sin(theta)])

    return rhs


def _step_cap(y: np.ndarray, sign: int, p: Params, phi: PrescribedFunction, settings: IntegratorSettings) -> float:
    """Largest step that keeps a x + b sin(theta) from changing sign."""
    x, theta = y[0], y[1]
    denominator = p.denominator(x, math.sin(theta))
    slope = raw_theta_prime(x, theta, p, phi)
    rate = math.cos(theta) * (p.a + p.b * slope)
    if not math.isfinite(rate):
        return MIN_STEP_CAP
    if denominator * rate * sign >= 0:
        return settings.h_max
    cap = settings.wall_step_fraction * abs(denominator / rate)
    return max(MIN_STEP_CAP, min(settings.h_max, cap))


def _locate(g: Callable[[float], float], lo: float, hi: float, tol: float) -> float:
    """Bisection for a sign change of g on [lo, hi]; returns the pre-event side."""
    g_lo = g(lo)
    for _ in range(BISECTION_ITERATIONS):
        if abs(hi - lo) < tol:
            break
        mid = 0.5 * (lo + hi)
        g_mid = g(mid)
        if g_mid == 0 or (g_mid > 0) != (g_lo > 0):
            hi = mid
        else:
            lo, g_lo = mid, g_mid
    return lo


def _sample(s: float, y: np.ndarray, p: Params, phi: PrescribedFunction) -> ProfileSample:
    x, theta, z = float(y[0]), float(y[1]), float(y[2])
    return ProfileSample.at(s, x, z, theta, raw_theta_prime(x, theta, p, phi))


class _Run:
    """State of one integration: the solver, accepted samples and pending events."""

    def __init__(self, start: PhasePoint, sign: int, p: Params, phi: PrescribedFunction,
                 stops: Stops, s_max: float, settings: IntegratorSettings):
        self.sign = sign
        self.p = p
        self.phi = phi
        self.stops = list(stops)
        self.settings = settings
        self.pole_enabled = True
        y0 = np.array([start.x, start.theta, 0.0])
        self.solver = RK45(
            system(p, phi), 0.0, y0, sign * s_max,
            max_step=_step_cap(y0, sign, p, phi, settings),
            rtol=settings.rtol, atol=settings.atol,
        )
        self.samples: List[ProfileSample] = [_sample(0.0, y0, p, phi)]
        self.steps = 0

    def _event_candidates(self, y_old: np.ndarray, y_new: np.ndarray) -> List[Tuple[str, Callable, object]]:
        candidates = []
        settings = self.settings
        if y_new[0] <= settings.eps_axis:
            candidates.append((_AXIS, lambda y: y[0] - settings.eps_axis, None))
        if self.pole_enabled and y_old[0] > settings.eps_pole >= y_new[0]:
            candidates.append((_POLE, lambda y: y[0] - settings.eps_pole, None))
        if wall_ratio(y_new[0], y_new[1], self.p) <= settings.eps_wall:
            candidates.append((_WALL, lambda y: wall_ratio(y[0], y[1], self.p) - settings.eps_wall, None))
        # x turns from decreasing to increasing: a minimum of the radius
        if self.sign * math.cos(y_old[1]) < 0 <= self.sign * math.cos(y_new[1]):
            candidates.append((_TOUCH, lambda y: self.sign * math.cos(y[1]), None))
        for stop in self.stops:
            level = stop.first_crossing(float(y_old[1]), float(y_new[1]))
            if level is not None:
                candidates.append((_STOP, lambda y, level=level: y[1] - level, (stop, level)))
        return candidates

    def step(self) -> Optional[Tuple[EndpointKind, bool]]:
        """
        Advances one accepted step.

        Returns:
            None to keep going, or (finish endpoint, closed) when the run ends.
        """
        solver = self.solver
        solver.max_step = _step_cap(solver.y, self.sign, self.p, self.phi, self.settings)
        y_old = solver.y.copy()
        solver.step()
        if solver.status == "failed":
            return self._underflow()
        self.steps += 1
        y_new = solver.y
        candidates = self._event_candidates(y_old, y_new)
        if candidates:
            dense = solver.dense_output()
            located = []
            for kind, g, payload in candidates:
                s_event = _locate(lambda s: g(dense(s)), solver.t_old, solver.t, self.settings.event_tol)
                located.append((abs(s_event - solver.t_old), kind, s_event, payload))
            for _, kind, s_event, payload in sorted(located, key=lambda item: item[0]):
                outcome = self._fire(kind, s_event, dense(s_event), payload)
                if outcome is not None:
                    return outcome
        self.samples.append(_sample(solver.t, y_new, self.p, self.phi))
        if solver.status == "finished":
            return EndpointKind(TRUNCATED, float(y_new[1]), float(y_new[0]), solver.t), False
        return None

    def _fire(self, kind: str, s_event: float, y_event: np.ndarray, payload) -> Optional[Tuple[EndpointKind, bool]]:
        sample = _sample(s_event, y_event, self.p, self.phi)
        if kind == _STOP:
            stop, level = payload
            if isinstance(stop, PeriodicStop):
                if abs(sample.x - stop.x0) > self.settings.return_tol * (1 + stop.x0):
                    return None
                self.samples.append(sample)
                return EndpointKind(PERIODIC_RETURN, level, sample.x, s_event), True
            self.samples.append(sample)
            return EndpointKind(LINE_CROSSING, level, sample.x, s_event), False
        if kind == _TOUCH:
            if sample.x > self.settings.eps_pole:
                return None
            endpoint = touch_endpoint(sample)
            self.samples.append(sample)
            self.samples.append(ProfileSample.on_axis(sample.s, sample.z, sample.theta, sample.kappa1, False))
            return endpoint, False
        trail = self.samples[-2:] + [sample]
        if kind == _POLE:
            if abs(math.sin(sample.theta)) > self.settings.pole_angle:
                return None
            endpoint = axis_endpoint(trail, self.settings)
            if endpoint.kind != AXIS_ORTHOGONAL:
                logger.debug("pole approach at s = %.6g ends in a cusp; continuing to the axis", s_event)
                self.pole_enabled = False
                return None
        elif kind == _AXIS:
            endpoint = axis_endpoint(trail, self.settings)
        else:
            endpoint = wall_endpoint(trail, self.p, self.settings)
        self.samples.append(sample)
        if endpoint.on_axis:
            self._append_axis_sample(sample, endpoint)
        return endpoint, False

    def _append_axis_sample(self, sample: ProfileSample, endpoint: EndpointKind) -> None:
        cos_theta = math.cos(sample.theta)
        arc = sample.x / abs(cos_theta) if abs(cos_theta) > 1e-12 else 0.0
        s_axis = sample.s + self.sign * arc
        z_axis = sample.z + math.sin(sample.theta) * (s_axis - sample.s)
        orthogonal = endpoint.kind == AXIS_ORTHOGONAL
        self.samples.append(ProfileSample.on_axis(s_axis, z_axis, endpoint.theta, sample.kappa1, orthogonal))

    def _underflow(self) -> Tuple[EndpointKind, bool]:
        trail = self.samples[-3:]
        logger.debug("step underflow at s = %.12g: %s", self.solver.t, self.solver.status)
        endpoint = detect_endpoint(trail, self.p, self.phi, self.settings, slack=1e3)
        if endpoint.on_axis:
            self._append_axis_sample(trail[-1], endpoint)
        return endpoint, False


def integrate(
    start: PhasePoint,
    direction: str,
    p: Params,
    phi: PrescribedFunction,
    stops: Stops = (),
    s_max: Optional[float] = None,
    settings: IntegratorSettings = DEFAULT_SETTINGS,
    check_character: bool = True,
) -> Orbit:
    """
    Integrates the orbit through a phase point until an event or s_max.

    The axis (x = 0) and the singular curve (a x + b sin theta = 0) always end
    the run; ``stops`` adds line crossings and periodic returns.

    Args:
        start: Initial phase point; z starts at 0.
        direction: ``"forward"`` or ``"backward"`` in arc length.
        p: Coefficients.
        phi: Prescribed function.
        stops: Extra events.
        s_max: Arc-length budget; defaults to ``settings.s_max``.
        settings: Tolerances and walls.
        check_character: Refuse parabolic or mixed data.

    Returns:
        The orbit, samples ordered in the direction of integration.

    Raises:
        CharacterViolation: For parabolic or mixed character.
        StepUnderflow: If the step collapses away from the axis and S.
        Ambiguous: If the end is close to both walls.
    """
    if direction not in (FORWARD, BACKWARD):
        raise ValueError(f"direction must be '{FORWARD}' or '{BACKWARD}'")
    if check_character:
        require_character(p, phi)
    budget = settings.s_max if s_max is None else s_max
    sign = 1 if direction == FORWARD else -1

    start_time = time.perf_counter()
    run = _Run(start, sign, p, phi, stops, budget, settings)
    outcome = None
    while outcome is None:
        outcome = run.step()
    finish, closed = outcome
    begin = EndpointKind(START, start.theta, start.x, 0.0)

    orbit = Orbit(run.samples, begin, finish, p, phi.text, closed)
    if finish.kind == TRUNCATED and orbit.max_deviation(start.x, start.theta) < CONSTANT_ORBIT_TOL:
        constant = EndpointKind(PERIODIC_RETURN, start.theta, start.x)
        orbit = Orbit(run.samples, constant, constant, p, phi.text, True)

    elapsed_ms = (time.perf_counter() - start_time) * 1000
    orbit.stats = {
        "steps": run.steps,
        "nfev": run.solver.nfev,
        "time_ms": round(elapsed_ms, 3),
        "direction": direction,
    }
    logger.debug("integrated %s from (%.9g, %.9g): %d steps, end %s",
                 direction, start.x, start.theta, run.steps, finish)
    return orbit


def integrate_both(
    start: PhasePoint,
    p: Params,
    phi: PrescribedFunction,
    stops: Sequence = (),
    backward_stops: Optional[Sequence] = None,
    s_max: Optional[float] = None,
    settings: IntegratorSettings = DEFAULT_SETTINGS,
) -> Orbit:
    """
    Integrates in both directions from a point and joins the halves.

    Returns:
        One orbit ordered by increasing arc length.
    """
    forward = integrate(start, FORWARD, p, phi, stops, s_max, settings)
    if forward.closed:
        return Orbit(forward.samples, forward.finish_end, forward.finish_end,
                     p, forward.phi_id, True, stats=forward.stats)
    backward = integrate(
        start, BACKWARD, p, phi,
        stops if backward_stops is None else backward_stops, s_max, settings,
    )
    joined = Orbit.joined(backward, forward)
    joined.stats = {
        "steps": forward.stats["steps"] + backward.stats["steps"],
        "nfev": forward.stats["nfev"] + backward.stats["nfev"],
        "time_ms": round(forward.stats["time_ms"] + backward.stats["time_ms"], 3),
        "direction": "both",
    }
    return joined

