"""Static geometry of the phase plane: S, Gamma, e0, regions and PDE character."""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from geometry.curvature import raw_theta_prime
from geometry.params import Params
from phase.point import PhasePoint
from phi.prescribed import PrescribedFunction, validation_grid
from utils.constants import EPS_REGION, SECTION_LINES
from utils.errors import CharacterViolation, NotApplicable, OnBoundary

ELLIPTIC = "elliptic"
HYPERBOLIC = "hyperbolic"
PARABOLIC = "parabolic"
MIXED = "mixed"

BELOW = "below"
ABOVE = "above"
ABSENT = "absent"


@dataclass(frozen=True)
class PDECharacter:
    kind: str
    witness: float
    minimum: float
    maximum: float

    def require_definite(self) -> None:
        """Raises CharacterViolation unless the character is elliptic or hyperbolic."""
        if self.kind not in (ELLIPTIC, HYPERBOLIC):
            raise CharacterViolation(self.kind)


@dataclass(frozen=True)
class Region:
    half: int
    gamma_side: str
    s_side: str
    quadrant: int
    x_prime_sign: int
    theta_prime_sign: int

    @property
    def label(self) -> str:
        return f"Theta{self.half}/Gamma:{self.gamma_side}/S:{self.s_side}/Q{self.quadrant}"


def singular_curve(theta: float, p: Params) -> Optional[float]:
    """S(theta) = -b sin(theta) / a when positive."""
    value = -p.b * math.sin(theta) / p.a
    return value if value > 0 else None


def nullcline(theta: float, p: Params, phi: PrescribedFunction) -> Optional[float]:
    """Gamma(theta) = a sin(theta) / phi(cos theta) when positive."""
    value = p.a * math.sin(theta) / phi(math.cos(theta))
    return value if value > 0 else None


def equilibrium(p: Params, phi: PrescribedFunction) -> Optional[PhasePoint]:
    """
    The constant orbit e0 generating the cylinder of radius |a / phi(0)|.

    Returns:
        (a/phi(0), pi/2) when a phi(0) > 0, (-a/phi(0), 3pi/2) otherwise, or
        None when phi(0) = 0.
    """
    phi0 = phi(0.0)
    if phi0 == 0:
        return None
    if p.a * phi0 > 0:
        return PhasePoint(p.a / phi0, math.pi / 2)
    return PhasePoint(-p.a / phi0, 3 * math.pi / 2)


def section_angle(p: Params, phi: PrescribedFunction) -> float:
    """The line through e0: pi/2 when a phi(0) > 0, else 3pi/2."""
    return math.pi / 2 if p.a * phi(0.0) > 0 else 3 * math.pi / 2


def pde_character(p: Params, phi: PrescribedFunction) -> PDECharacter:
    """
    Classifies the sign of the discriminant a^2 + b phi(y) over [-1, 1].

    Args:
        p: Coefficients.
        phi: Prescribed function.

    Returns:
        The character with the witness abscissa.
    """
    grid = validation_grid()
    discriminant = p.a ** 2 + p.b * phi.grid_values()
    low = int(np.argmin(discriminant))
    high = int(np.argmax(discriminant))
    minimum = float(discriminant[low])
    maximum = float(discriminant[high])
    scale = 1e-12 * (1.0 + p.a ** 2)
    if abs(minimum) <= scale and abs(maximum) <= scale:
        return PDECharacter(PARABOLIC, 0.0, minimum, maximum)
    if minimum > 0:
        return PDECharacter(ELLIPTIC, float(grid[low]), minimum, maximum)
    if maximum < 0:
        return PDECharacter(HYPERBOLIC, float(grid[high]), minimum, maximum)
    return PDECharacter(MIXED, float(grid[low]), minimum, maximum)


def require_character(p: Params, phi: PrescribedFunction) -> PDECharacter:
    character = pde_character(p, phi)
    character.require_definite()
    return character


def linearization_at_e0(p: Params, phi: PrescribedFunction) -> np.ndarray:
    """
    Jacobian of the system at the equilibrium.

    Returns:
        The 2x2 matrix [[0, -1], [(a^2 + b phi0)/(b + a^2/phi0)^2, -a phi'(0)/(a^2 + b phi0)]].

    Raises:
        NotApplicable: If a^2 + b phi(0) <= 0.
    """
    phi0 = phi(0.0)
    discriminant = p.a ** 2 + p.b * phi0
    if discriminant <= 0 or phi0 == 0:
        raise NotApplicable(f"a^2 + b phi(0) = {discriminant:g} is not positive")
    lower_left = discriminant / (p.b + p.a ** 2 / phi0) ** 2
    lower_right = -p.a * phi.derivative(0.0) / discriminant
    return np.array([[0.0, -1.0], [lower_left, lower_right]])


def first_integral_residual(s0: PhasePoint, s1: PhasePoint, p: Params, c: float) -> float:
    """Conserved quantity for phi = c, measured between two points of one orbit."""
    sin0 = math.sin(s0.theta)
    sin1 = math.sin(s1.theta)
    return (
        p.a * (s1.x * sin1 - s0.x * sin0)
        + 0.5 * p.b * (sin1 ** 2 - sin0 ** 2)
        - 0.5 * c * (s1.x ** 2 - s0.x ** 2)
    )


def sphere_radius(p: Params, c: float) -> Optional[float]:
    """Radius (a + sqrt(a^2 + bc)) / c of the sphere for constant phi = c."""
    discriminant = p.a ** 2 + p.b * c
    if discriminant < 0 or c == 0:
        return None
    radius = (p.a + math.sqrt(discriminant)) / c
    return radius if radius > 0 else None


def zero_phi_landmark(p: Params, theta0: float) -> float:
    """Where the axis orbit from (0, theta0) meets theta = 3pi/2 when phi = 0."""
    return p.b / (2 * p.a) * math.cos(theta0) ** 2


def constant_crossing(p: Params, c: float) -> Optional[float]:
    """x_c = -2a/c for the hyperbolic axis orbit through (0, pi/2), when c > -2a^2."""
    if c <= -2 * p.a ** 2 or c >= 0:
        return None
    return -2 * p.a / c


def region_of(pt: PhasePoint, p: Params, phi: PrescribedFunction) -> Region:
    """
    Locates the monotonicity region of a phase point.

    Raises:
        OnBoundary: Within EPS_REGION of Gamma, S or a line theta in {0, pi/2, pi, 3pi/2}.
    """
    reduced = pt.reduced
    for line in (0.0, math.pi) + SECTION_LINES + (2 * math.pi,):
        if abs(reduced - line) <= EPS_REGION:
            raise OnBoundary(f"theta = {line:.6g}")

    def side(curve: Optional[float], name: str) -> str:
        if curve is None:
            return ABSENT
        if abs(pt.x - curve) <= EPS_REGION:
            raise OnBoundary(name)
        return BELOW if pt.x < curve else ABOVE

    gamma_side = side(nullcline(reduced, p, phi), "Gamma")
    s_side = side(singular_curve(reduced, p), "S")
    slope = raw_theta_prime(pt.x, reduced, p, phi)
    return Region(
        half=1 if reduced < math.pi else 2,
        gamma_side=gamma_side,
        s_side=s_side,
        quadrant=int(reduced // (math.pi / 2)),
        x_prime_sign=int(np.sign(math.cos(reduced))),
        theta_prime_sign=int(np.sign(slope)),
    )


def curve_samples(p: Params, phi: PrescribedFunction, count: int = 721) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Samples of S and Gamma over (0, 2pi); NaN where a curve is absent."""
    thetas = np.linspace(0.0, 2 * math.pi, count)
    s_values = np.array([singular_curve(t, p) or np.nan for t in thetas])
    gamma_values = np.array([nullcline(t, p, phi) or np.nan for t in thetas])
    return thetas, s_values, gamma_values
