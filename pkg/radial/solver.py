"""Radial graphs z = u(r) leaving the axis orthogonally.

Writing F = u' / sqrt(1 + u'^2) (the sine of the tangent angle), the
curvature relation becomes

    a r F + (b/2) F^2 = a * integral_0^r t g(u'(t)) dt,   g(y) = phi(1/sqrt(1+y^2)) / a,

and the root of this quadratic that vanishes with r defines the operator T.
A fixed point of T is obtained by Picard iteration from u = 0.
"""

import logging
import math
import time
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy.integrate import cumulative_trapezoid

from geometry.params import Params
from integration.orbit import BACKWARD, FORWARD
from phase.plane import ELLIPTIC, require_character
from phase.point import PhasePoint
from phi.expression import evaluate
from phi.prescribed import PrescribedFunction
from utils.constants import (
    DELTA_FRACTION,
    DELTA_HALVINGS,
    PICARD_MAX_ITER,
    PICARD_TOL,
    RADIAL_N,
)
from utils.errors import DomainExit, NoConvergence, NotApplicable

logger = logging.getLogger(__name__)

UP = "up"
DOWN = "down"


@dataclass(frozen=True)
class RadialSolution:
    """Heights and slopes of a radial graph on a uniform grid of [0, delta].

    ``u`` and ``uprime`` are stored in the requested orientation; ``down``
    is the mirror image -u of the ``up`` graph.
    """

    delta: float
    grid: np.ndarray
    u: np.ndarray
    uprime: np.ndarray
    orientation: str = UP
    iterations: int = 0
    ratios: Tuple[float, ...] = ()
    stats: Dict[str, float] = field(default_factory=dict, compare=False)

    @property
    def n(self) -> int:
        return len(self.grid) - 1

    @property
    def contracting(self) -> bool:
        """Every Picard update shrank the previous one."""
        return bool(self.ratios) and all(ratio < 1.0 for ratio in self.ratios)

    @property
    def upward_slope(self) -> np.ndarray:
        return self.uprime if self.orientation == UP else -self.uprime

    @property
    def angles(self) -> np.ndarray:
        """Tangent angle theta of the profile, outward direction for ``up``."""
        base = np.arctan(self.uprime)
        return base if self.orientation == UP else math.pi + base

    def arc_length(self) -> np.ndarray:
        return cumulative_trapezoid(np.sqrt(1.0 + self.uprime ** 2), self.grid, initial=0.0)

    def kappa1(self) -> np.ndarray:
        """d theta / ds, from the angle differentiated along the grid."""
        theta = self.angles
        return np.gradient(theta, self.grid) * np.cos(theta)

    def residuals(self, p: Params, phi: PrescribedFunction) -> np.ndarray:
        """
        2aH + bK - phi(cos theta) at the interior grid points.

        Returns:
            Array of length n - 1 (both grid ends excluded).
        """
        theta = self.angles
        kappa1 = self.kappa1()[1:-1]
        r = self.grid[1:-1]
        sines = np.sin(theta[1:-1])
        kappa2 = sines / r
        H = 0.5 * (kappa1 + kappa2)
        K = kappa1 * kappa2
        return 2 * p.a * H + p.b * K - evaluate(phi.expr, np.cos(theta[1:-1]))

    def reflected(self) -> "RadialSolution":
        orientation = DOWN if self.orientation == UP else UP
        return replace(self, u=-self.u, uprime=-self.uprime, orientation=orientation)


def radial_grid(delta: float, n: int = RADIAL_N) -> np.ndarray:
    return np.linspace(0.0, delta, n + 1)


def _sine_profile(r: np.ndarray, uprime: np.ndarray, p: Params, phi: PrescribedFunction) -> np.ndarray:
    """F(r) for the current slopes; raises DomainExit where T is undefined."""
    g = evaluate(phi.expr, 1.0 / np.sqrt(1.0 + uprime ** 2)) / p.a
    inner = cumulative_trapezoid(r * g, r, initial=0.0)
    argument = r ** 2 + (2 * p.b / p.a) * inner
    negative = argument < 0
    if np.any(negative):
        raise DomainExit(float(r[np.argmax(negative)]), "negative square-root argument")
    root = np.sqrt(argument)
    denominator = r + root
    # (a/b)(-r + root) rewritten without cancellation.
    sines = np.divide(2 * inner, denominator, out=np.zeros_like(r), where=denominator > 0)
    vertical = np.abs(sines) >= 1.0
    if np.any(vertical):
        raise DomainExit(float(r[np.argmax(vertical)]), "slope became vertical")
    return sines


def apply_T(u: RadialSolution, p: Params, phi: PrescribedFunction) -> RadialSolution:
    """
    One application of the radial operator T.

    Args:
        u: Current iterate, in the ``up`` orientation.
        p: Coefficients.
        phi: Prescribed function.

    Returns:
        T u on the same grid.

    Raises:
        DomainExit: If the square-root argument goes negative or |F| >= 1.
    """
    r = u.grid
    sines = _sine_profile(r, u.upward_slope, p, phi)
    slopes = sines / np.sqrt(1.0 - sines ** 2)
    heights = cumulative_trapezoid(slopes, r, initial=0.0)
    return replace(u, u=heights, uprime=slopes, orientation=UP)


def default_delta(p: Params, phi: PrescribedFunction) -> float:
    """0.1 * min(1, |b/a|, |a| / max |phi|)."""
    largest = float(np.max(np.abs(phi.grid_values())))
    bounds = [1.0, abs(p.b / p.a)]
    if largest > 0:
        bounds.append(abs(p.a) / largest)
    return DELTA_FRACTION * min(bounds)


def solve_radial(
    p: Params,
    phi: PrescribedFunction,
    delta: Optional[float] = None,
    orientation: str = UP,
    n: int = RADIAL_N,
) -> RadialSolution:
    """
    Picard iteration u <- T u from u = 0.

    Args:
        p: Coefficients, elliptic with phi.
        phi: Prescribed function.
        delta: Radius of the graph; defaults to ``default_delta``.
        orientation: ``up`` or ``down`` (the reflection -u).
        n: Number of grid intervals.

    Returns:
        The converged solution with its contraction ratios.

    Raises:
        NotApplicable: For hyperbolic data.
        NoConvergence: If 200 iterations do not bring the update below 1e-12.
        DomainExit: If T leaves its domain (delta too large).
    """
    character = require_character(p, phi)
    if character.kind != ELLIPTIC:
        raise NotApplicable("the radial solver needs elliptic data")
    if orientation not in (UP, DOWN):
        raise ValueError(f"orientation must be '{UP}' or '{DOWN}'")
    if delta is None:
        delta = default_delta(p, phi)

    start_time = time.perf_counter()
    grid = radial_grid(delta, n)
    current = RadialSolution(delta, grid, np.zeros_like(grid), np.zeros_like(grid))
    ratios: List[float] = []
    previous_change = None
    for iteration in range(1, PICARD_MAX_ITER + 1):
        following = apply_T(current, p, phi)
        change = float(np.max(np.abs(following.u - current.u)))
        if previous_change:
            ratios.append(change / previous_change)
        logger.debug("Picard step %d: change %.3e", iteration, change)
        current = following
        if change < PICARD_TOL:
            break
        previous_change = change
    else:
        raise NoConvergence(PICARD_MAX_ITER, ratios[-1] if ratios else None)

    elapsed_ms = (time.perf_counter() - start_time) * 1000
    solution = replace(
        current,
        iterations=iteration,
        ratios=tuple(ratios),
        stats={"time_ms": round(elapsed_ms, 3), "iterations": iteration},
    )
    return solution.reflected() if orientation == DOWN else solution


def solve_radial_shrinking(
    p: Params,
    phi: PrescribedFunction,
    orientation: str = UP,
    n: int = RADIAL_N,
) -> RadialSolution:
    """
    solve_radial from the default delta, halving delta on failure.

    Raises:
        DomainExit, NoConvergence: If the last of the halvings still fails.
    """
    delta = default_delta(p, phi)
    for attempt in range(DELTA_HALVINGS + 1):
        try:
            return solve_radial(p, phi, delta, orientation, n)
        except (DomainExit, NoConvergence) as err:
            if attempt == DELTA_HALVINGS:
                raise
            logger.warning("radial solve failed at delta = %g (%s); halving", delta, err)
            delta /= 2


def seed_orbit(sol: RadialSolution) -> Tuple[PhasePoint, str]:
    """
    Phase point at the rim r = delta of the graph and the direction leading away from the axis.

    Returns:
        ((delta, theta), forward) for ``up``, ((delta, pi + arctan u'), backward) for ``down``.
    """
    theta = float(sol.angles[-1])
    direction = FORWARD if sol.orientation == UP else BACKWARD
    return PhasePoint(sol.delta, theta), direction
