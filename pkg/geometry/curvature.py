"""Curvatures of a rotational profile curve and the Weingarten residual.

For the profile (x(s), 0, z(s)) with x' = cos(theta), z' = sin(theta) the
principal curvatures are kappa1 = theta' and kappa2 = sin(theta) / x.
"""

import math
from dataclasses import dataclass
from typing import Tuple

from geometry.params import Params
from phi.prescribed import PrescribedFunction
from utils.constants import EPS_SING
from utils.errors import AxisPoint, NearSingular

NAN = float("nan")


@dataclass(frozen=True)
class ProfileSample:
    """One point of the generating curve with its curvature data."""

    s: float
    x: float
    z: float
    theta: float
    kappa1: float
    kappa2: float
    H: float
    K: float
    angle_fn: float

    @classmethod
    def at(cls, s: float, x: float, z: float, theta: float, kappa1: float) -> "ProfileSample":
        """Builds a sample from its position and kappa1; requires x > 0."""
        k1, k2, H, K = curvatures(x, theta, kappa1)
        return cls(s, x, z, theta, k1, k2, H, K, math.cos(theta))

    @classmethod
    def on_axis(cls, s: float, z: float, theta: float, kappa1: float, orthogonal: bool) -> "ProfileSample":
        """Builds the x = 0 endpoint sample; kappa2 is only defined for orthogonal ends."""
        if orthogonal:
            return cls(s, 0.0, z, theta, kappa1, kappa1, kappa1, kappa1 * kappa1, math.cos(theta))
        return cls(s, 0.0, z, theta, kappa1, NAN, NAN, NAN, math.cos(theta))


def singular_guard(x: float, p: Params) -> float:
    return EPS_SING * (1.0 + abs(p.a * x))


def raw_theta_prime(x: float, theta: float, p: Params, phi: PrescribedFunction) -> float:
    """The right-hand side without the singular-curve guard (infinite on S)."""
    sin_theta = math.sin(theta)
    numerator = x * phi(math.cos(theta)) - p.a * sin_theta
    denominator = p.a * x + p.b * sin_theta
    if denominator == 0.0:
        return math.copysign(math.inf, numerator) if numerator != 0.0 else 0.0
    return numerator / denominator


def theta_prime(x: float, theta: float, p: Params, phi: PrescribedFunction) -> float:
    """
    Evaluates theta' = (x phi(cos theta) - a sin theta) / (a x + b sin theta).

    Args:
        x: Radius.
        theta: Angle of the tangent.
        p: Coefficients a, b.
        phi: Prescribed function.

    Returns:
        theta', which is kappa1 at the point.

    Raises:
        NearSingular: If |a x + b sin theta| is within the singular guard.
    """
    denominator = p.denominator(x, math.sin(theta))
    if abs(denominator) <= singular_guard(x, p):
        raise NearSingular(denominator)
    return raw_theta_prime(x, theta, p, phi)


def curvatures(x: float, theta: float, theta_prime_value: float) -> Tuple[float, float, float, float]:
    """
    Principal, mean and Gauss curvature at a profile point.

    Args:
        x: Radius, must be positive.
        theta: Tangent angle.
        theta_prime_value: theta' at the point.

    Returns:
        Tuple (kappa1, kappa2, H, K).

    Raises:
        AxisPoint: If x = 0.
    """
    if x <= 0:
        raise AxisPoint()
    kappa1 = theta_prime_value
    kappa2 = math.sin(theta) / x
    return kappa1, kappa2, 0.5 * (kappa1 + kappa2), kappa1 * kappa2


def weingarten_residual(sample: ProfileSample, p: Params, phi: PrescribedFunction) -> float:
    """
    Returns 2aH + bK - phi(cos theta) at a sample.

    Raises:
        AxisPoint: For samples on the axis.
    """
    if sample.x <= 0:
        raise AxisPoint()
    return 2 * p.a * sample.H + p.b * sample.K - phi(math.cos(sample.theta))
