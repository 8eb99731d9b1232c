import math
from dataclasses import dataclass

from geometry.curvature import singular_guard
from geometry.params import Params
from utils.constants import TWO_PI
from utils.errors import AxisPoint, NearSingular


def reduce_angle(theta: float) -> float:
    """Representative of theta in [0, 2 pi)."""
    reduced = math.fmod(theta, TWO_PI)
    if reduced < 0:
        reduced += TWO_PI
    return 0.0 if reduced == TWO_PI else reduced


@dataclass(frozen=True)
class PhasePoint:
    """A point (x, theta) of the phase plane; theta lives on the covering line."""

    x: float
    theta: float

    def __post_init__(self):
        if not self.x > 0:
            raise AxisPoint()

    @classmethod
    def checked(cls, x: float, theta: float, p: Params) -> "PhasePoint":
        """Builds a point and rejects it when it sits on the singular curve."""
        point = cls(x, theta)
        denominator = p.denominator(x, math.sin(theta))
        if abs(denominator) <= singular_guard(x, p):
            raise NearSingular(denominator)
        return point

    @property
    def reduced(self) -> float:
        return reduce_angle(self.theta)

    @property
    def winding(self) -> int:
        return int(round((self.theta - self.reduced) / TWO_PI))

    @property
    def half(self) -> int:
        """1 for theta in (0, pi), 2 for (pi, 2 pi), 0 on the separating lines."""
        reduced = self.reduced
        if 0 < reduced < math.pi:
            return 1
        if math.pi < reduced < TWO_PI:
            return 2
        return 0
