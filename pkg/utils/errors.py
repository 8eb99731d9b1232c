"""Error hierarchy shared by every package.

``ValidationError`` covers bad input (exit status 1), ``NumericalError`` covers
computations that failed on valid input (exit status 2).
"""

from typing import Any, Dict, Optional


class PhiSurfaceError(Exception):
    """Base class of every error raised by the library."""


class ValidationError(PhiSurfaceError):
    """Input rejected before or during validation."""


class NumericalError(PhiSurfaceError):
    """A computation on valid input could not be completed."""


class ExpressionSyntaxError(ValidationError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnknownIdentifier(ValidationError):
    def __init__(self, name: str, offset: int):
        super().__init__(f"unknown identifier '{name}' at offset {offset}")
        self.name = name
        self.offset = offset


class NotEven(ValidationError):
    def __init__(self, y: float, gap: float):
        super().__init__(f"phi is not even: |phi(y) - phi(-y)| = {gap:.3e} at y = {y:g}")
        self.y = y
        self.gap = gap


class Vanishing(ValidationError):
    def __init__(self, y: float, value: float):
        super().__init__(f"phi vanishes or changes sign: phi({y:g}) = {value:.3e}")
        self.y = y
        self.value = value


class EvalError(ValidationError):
    def __init__(self, y: float, reason: str):
        super().__init__(f"cannot evaluate at y = {y:g}: {reason}")
        self.y = y
        self.reason = reason


class DerivativeMismatch(ValidationError):
    def __init__(self, y: float, symbolic: float, numeric: float):
        super().__init__(
            f"derivative mismatch at y = {y:g}: symbolic {symbolic:.9g}, "
            f"central difference {numeric:.9g}"
        )
        self.y = y


class InvalidParams(ValidationError):
    pass


class AxisPoint(ValidationError):
    def __init__(self):
        super().__init__("curvature requested at a point on the rotation axis (x = 0)")


class SpansBothHalves(ValidationError):
    def __init__(self):
        super().__init__("orbit visits both halves of the phase plane; no single reflection line")


class NotApplicable(ValidationError):
    pass


class OnBoundary(ValidationError):
    def __init__(self, boundary: str):
        super().__init__(f"point lies on the region boundary {boundary}")
        self.boundary = boundary


class CharacterViolation(ValidationError):
    def __init__(self, kind: str):
        super().__init__(f"{kind} character out of scope")
        self.kind = kind


class AtSingularRadius(ValidationError):
    def __init__(self, x0: float):
        super().__init__(f"seed x0 = {x0:g} lies on the singular radius 1/a")
        self.x0 = x0


class ConfigError(ValidationError):
    pass


class NearSingular(NumericalError):
    def __init__(self, denominator: float):
        super().__init__(f"a*x + b*sin(theta) = {denominator:.3e} is at the singular curve")
        self.denominator = denominator


class StepUnderflow(NumericalError):
    def __init__(self, s: float, x: float, theta: float):
        super().__init__(f"step size collapsed at s = {s:.12g} (x = {x:.12g}, theta = {theta:.12g})")
        self.s = s
        self.x = x
        self.theta = theta


class Ambiguous(NumericalError):
    def __init__(self, x: float, theta: float):
        super().__init__(f"axis and singular curve both within tolerance at x = {x:.3e}, theta = {theta:.9g}")
        self.x = x
        self.theta = theta


class DomainExit(NumericalError):
    def __init__(self, r: float, reason: str):
        super().__init__(f"radial operator left its domain at r = {r:g}: {reason}")
        self.r = r
        self.reason = reason


class NoConvergence(NumericalError):
    def __init__(self, iterations: int, last_ratio: Optional[float]):
        ratio = "n/a" if last_ratio is None else f"{last_ratio:.3g}"
        super().__init__(f"Picard iteration did not converge in {iterations} steps (last ratio {ratio})")
        self.iterations = iterations
        self.last_ratio = last_ratio


class Unclassified(NumericalError):
    def __init__(self, signature: Dict[str, Any]):
        super().__init__(f"orbit matches no family: {signature}")
        self.signature = signature


class NoCrossing(NumericalError):
    def __init__(self, endpoint: Any):
        super().__init__(f"orbit never reaches the crossing line; it ends at {endpoint}")
        self.endpoint = endpoint
