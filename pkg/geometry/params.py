from dataclasses import dataclass

from utils.errors import InvalidParams


@dataclass(frozen=True)
class Params:
    """Coefficients of the relation 2aH + bK = phi(N)."""

    a: float
    b: float

    def __post_init__(self):
        if self.a == 0 or self.b == 0:
            raise InvalidParams(f"a and b must be non-zero (a = {self.a:g}, b = {self.b:g})")

    def denominator(self, x: float, sin_theta: float) -> float:
        """The quantity a*x + b*sin(theta), which vanishes on the singular curve."""
        return self.a * x + self.b * sin_theta

    def negated(self) -> "Params":
        return Params(-self.a, -self.b)

    def flipped(self) -> "Params":
        """Coefficients seen after reversing the orientation of the Gauss map."""
        return Params(-self.a, self.b)

    def scaled(self, factor: float) -> "Params":
        return Params(self.a * factor, self.b * factor)
