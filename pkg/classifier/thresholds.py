"""Radii separating the families along the section lines."""

import logging
import math
from dataclasses import asdict, dataclass
from typing import Any, Callable, Dict, List, Optional, Tuple

from geometry.params import Params
from integration.orbit import BACKWARD, FORWARD, LINE_CROSSING
from integration.poincare import section_crossing
from integration.seeds import integrate_from_axis
from integration.settings import DEFAULT_SETTINGS, IntegratorSettings
from integration.stops import LineStop
from phase.plane import ELLIPTIC, HYPERBOLIC, constant_crossing, require_character, sphere_radius
from phase.point import PhasePoint
from phase.symmetry import normalize
from phi.prescribed import PrescribedFunction
from radial.continuation import radial_orbit
from radial.solver import UP
from utils.constants import BISECTION_TOL, X1_SEED_LEVELS, X1_SEED_OFFSET
from utils.errors import NoCrossing, NotApplicable, NumericalError

logger = logging.getLogger(__name__)

HALF_PI = math.pi / 2
THREE_HALVES_PI = 3 * math.pi / 2


@dataclass
class Thresholds:
    """Every threshold radius that applies to the data; the rest stay None."""

    x_plus: Optional[float] = None
    x1_infty: Optional[float] = None
    x1_infty_residual: Optional[float] = None
    x_infty: Optional[float] = None
    x_c: Optional[float] = None
    sphere_radius: Optional[float] = None

    def as_dict(self) -> Dict[str, Any]:
        return asdict(self)


def bisect_boundary(
    predicate: Callable[[float], bool],
    low: float,
    high: float,
    tol: float = BISECTION_TOL,
) -> Tuple[float, float]:
    """
    Narrows a bracket [low, high] on which a boolean predicate flips.

    Args:
        predicate: Family test; must differ at the two ends.
        low: One side of the boundary.
        high: The other side.
        tol: Width at which to stop.

    Returns:
        A tuple of the final lower and upper bounds.
    """
    low_value = predicate(low)
    if predicate(high) == low_value:
        raise ValueError(f"predicate does not change on [{low:g}, {high:g}]")
    steps = 0
    while high - low > tol:
        middle = 0.5 * low + 0.5 * high
        if predicate(middle) == low_value:
            low = middle
        else:
            high = middle
        steps += 1
    logger.debug("bisection finished after %d steps: [%.12g, %.12g]", steps, low, high)
    return low, high


def find_x_plus(p: Params, phi: PrescribedFunction, settings: IntegratorSettings = DEFAULT_SETTINGS) -> float:
    """
    Radius at which the orbit leaving (0, 0) reaches theta = pi/2.

    This is the sphere's equator; for constant phi = c it equals (a + sqrt(a^2 + bc)) / c.

    Raises:
        NotApplicable: For hyperbolic data.
        NoCrossing: If the orbit ends before the line.
    """
    p, phi, _ = normalize(p, phi)
    if require_character(p, phi).kind != ELLIPTIC:
        raise NotApplicable("x_plus is defined for elliptic data")
    orbit = radial_orbit(p, phi, UP, stops=(LineStop((HALF_PI,)),), settings=settings)
    if orbit.finish_end.kind != LINE_CROSSING:
        raise NoCrossing(orbit.finish_end)
    return orbit.finish_end.x


def find_x_infinity(p: Params, phi: PrescribedFunction, settings: IntegratorSettings = DEFAULT_SETTINGS) -> float:
    """
    The theta = 3pi/2 crossing of the orbit through the axis point (0, pi/2).

    Args:
        p: Hyperbolic coefficients (normalized to b = 1, a > 0 internally).
        phi: Prescribed function.
        settings: Integrator settings.

    Returns:
        x_infinity; equals -2a/c for constant phi = c > -2a^2.

    Raises:
        NoCrossing: When the orbit converges to (1/a, 3pi/2) or to S instead.
    """
    p, phi, _ = normalize(p, phi)
    if require_character(p, phi).kind != HYPERBOLIC:
        raise NotApplicable("x_infinity is defined for hyperbolic data")
    try:
        orbit = integrate_from_axis(HALF_PI, p, phi, (LineStop((THREE_HALVES_PI,)),), settings=settings)
    except NumericalError as err:
        logger.debug("axis orbit through (0, pi/2) failed: %s", err)
        raise NoCrossing(str(err)) from err
    if orbit.finish_end.kind != LINE_CROSSING:
        raise NoCrossing(orbit.finish_end)
    return orbit.finish_end.x


def nodoid_return(x1: float, p: Params, phi: PrescribedFunction, settings: IntegratorSettings = DEFAULT_SETTINGS) -> Optional[float]:
    """The theta = pi/2 crossing x_hat_1 of the nodoid through (x1, 3pi/2), followed backward."""
    return section_crossing(PhasePoint.checked(x1, THREE_HALVES_PI, p), BACKWARD, HALF_PI, p, phi, settings)


def _reaches_lower_line(x: float, p: Params, phi: PrescribedFunction, settings: IntegratorSettings) -> bool:
    start = PhasePoint.checked(x, HALF_PI, p)
    return section_crossing(start, FORWARD, THREE_HALVES_PI, p, phi, settings) is not None


def find_x1_infinity(p: Params, phi: PrescribedFunction, settings: IntegratorSettings = DEFAULT_SETTINGS) -> float:
    """
    Boundary on theta = pi/2 between non-complete orbits and nodoids.

    Seeds just beyond x_plus converge to S; seeds beyond the boundary reach
    theta = 3pi/2 and close up as nodoids.

    Raises:
        NotApplicable: Unless the data is elliptic with b > 0.
    """
    p, phi, _ = normalize(p, phi)
    if require_character(p, phi).kind != ELLIPTIC or p.b < 0:
        raise NotApplicable("x1_infinity is defined for elliptic data with b > 0")
    x_plus = find_x_plus(p, phi, settings)
    high = nodoid_return(p.b / p.a + 1.0, p, phi, settings)
    if high is None:
        raise NoCrossing("nodoid seed beyond b/a never reaches theta = pi/2")
    low = x_plus * (1 + 1e-6)
    low, high = bisect_boundary(lambda x: _reaches_lower_line(x, p, phi, settings), low, high)
    return 0.5 * (low + high)


def aitken(values: List[float]) -> List[float]:
    """Aitken delta-squared transform of a sequence."""
    accelerated = []
    for first, second, third in zip(values, values[1:], values[2:]):
        denominator = third - 2 * second + first
        if denominator == 0:
            accelerated.append(third)
        else:
            accelerated.append(third - (third - second) ** 2 / denominator)
    return accelerated


def estimate_x1_infinity(
    p: Params,
    phi: PrescribedFunction,
    settings: IntegratorSettings = DEFAULT_SETTINGS,
) -> Tuple[float, float]:
    """
    Extrapolates x_hat_1 as the nodoid neck x1 decreases geometrically to b/a.

    Returns:
        (estimate, residual), the residual being the change between the last two
        accelerated values.
    """
    p, phi, _ = normalize(p, phi)
    if require_character(p, phi).kind != ELLIPTIC or p.b < 0:
        raise NotApplicable("x1_infinity is defined for elliptic data with b > 0")
    returns = []
    for level in range(X1_SEED_LEVELS):
        x1 = p.b / p.a + X1_SEED_OFFSET * 2.0 ** -level
        crossing = nodoid_return(x1, p, phi, settings)
        if crossing is None:
            raise NoCrossing(f"nodoid seed {x1:g} never reaches theta = pi/2")
        logger.debug("nodoid seed %.9g returns at %.12g", x1, crossing)
        returns.append(crossing)
    accelerated = aitken(returns)
    estimate = accelerated[-1]
    residual = abs(accelerated[-1] - accelerated[-2]) if len(accelerated) > 1 else math.nan
    return estimate, residual


def thresholds(p: Params, phi: PrescribedFunction, settings: IntegratorSettings = DEFAULT_SETTINGS) -> Thresholds:
    """
    Computes every threshold applicable to the data.

    Failures of individual finders leave their field empty and are logged.
    """
    normalized, phi_n, _ = normalize(p, phi)
    character = require_character(normalized, phi_n)
    result = Thresholds()
    constant = phi_n.constant_value()
    if character.kind == ELLIPTIC:
        if constant is not None:
            result.sphere_radius = sphere_radius(normalized, constant)
        result.x_plus = find_x_plus(normalized, phi_n, settings)
        if normalized.b > 0:
            try:
                result.x1_infty, result.x1_infty_residual = estimate_x1_infinity(normalized, phi_n, settings)
            except NumericalError as err:
                logger.warning("x1_infinity not available: %s", err)
    else:
        if constant is not None:
            result.x_c = constant_crossing(normalized, constant)
        try:
            result.x_infty = find_x_infinity(normalized, phi_n, settings)
        except NoCrossing as err:
            logger.info("x_infinity does not exist: %s", err)
    return result
