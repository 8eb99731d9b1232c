import logging
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from phi.derivative import differentiate
from phi.expression import Const, Expression, Mul, compile_scalar, evaluate, to_text
from phi.parser import parse_phi
from utils.constants import (
    DERIVATIVE_POINTS,
    DERIVATIVE_REL_TOL,
    EVEN_TOL,
    FD_STEP,
    GRID_POINTS,
    VANISH_TOL,
)
from utils.errors import DerivativeMismatch, NotEven, Vanishing

logger = logging.getLogger(__name__)

POSITIVE = "positive"
NEGATIVE = "negative"
ZERO = "zero"


def validation_grid() -> np.ndarray:
    """GRID_POINTS abscissae on [-1, 1], mirror-symmetric and containing 0 exactly."""
    half = np.linspace(0.0, 1.0, GRID_POINTS // 2 + 1)
    return np.concatenate([-half[:0:-1], half])


@dataclass(frozen=True)
class PrescribedFunction:
    """A validated even, non-vanishing phi on [-1, 1] with its exact derivative.

    Instances are immutable and can be shared by concurrent integrations.
    """

    expr: Expression
    deriv: Expression
    sign: str
    evenness_certified: bool
    vanishing_allowed: bool = False
    _value: Callable[[float], float] = field(init=False, repr=False, compare=False)
    _slope: Callable[[float], float] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_value", compile_scalar(self.expr))
        object.__setattr__(self, "_slope", compile_scalar(self.deriv))

    def __call__(self, y: float) -> float:
        return self._value(y)

    def derivative(self, y: float) -> float:
        return self._slope(y)

    @property
    def text(self) -> str:
        return to_text(self.expr)

    @property
    def is_constant(self) -> bool:
        return self.expr.is_constant

    def constant_value(self) -> Optional[float]:
        """The constant c when phi is constant, else None."""
        if not self.is_constant:
            return None
        return float(evaluate(self.expr, 0.0))

    def grid_values(self) -> np.ndarray:
        return evaluate(self.expr, validation_grid())

    def minimum(self) -> float:
        return float(np.min(self.grid_values()))

    def maximum(self) -> float:
        return float(np.max(self.grid_values()))

    def scaled(self, factor: float) -> "PrescribedFunction":
        """
        Returns factor * phi, validated again.

        Args:
            factor: Non-zero real multiplier.

        Returns:
            A new PrescribedFunction.
        """
        if factor == 1.0:
            return self
        return validate(Mul(Const(float(factor)), self.expr), allow_vanishing=self.vanishing_allowed)


def _check_derivative(expr: Expression, deriv: Expression) -> None:
    interior = np.linspace(-1.0, 1.0, DERIVATIVE_POINTS + 2)[1:-1]
    symbolic = evaluate(deriv, interior)
    numeric = (evaluate(expr, interior + FD_STEP) - evaluate(expr, interior - FD_STEP)) / (2 * FD_STEP)
    error = np.abs(symbolic - numeric) / np.maximum(1.0, np.abs(symbolic))
    worst = int(np.argmax(error))
    if error[worst] >= DERIVATIVE_REL_TOL:
        raise DerivativeMismatch(float(interior[worst]), float(symbolic[worst]), float(numeric[worst]))


def validate(expr: Expression, allow_vanishing: bool = False) -> PrescribedFunction:
    """
    Certifies an expression as an admissible prescribed function.

    Args:
        expr: Parsed expression in y.
        allow_vanishing: Admit phi = 0 identically (comparison runs only).

    Returns:
        The validated PrescribedFunction.

    Raises:
        NotEven: If phi(y) and phi(-y) differ by more than the evenness tolerance.
        Vanishing: If |phi| drops below the vanishing tolerance or phi changes sign.
        EvalError: If phi or its derivative cannot be evaluated on the grid.
        DerivativeMismatch: If the symbolic derivative disagrees with differences.
    """
    grid = validation_grid()
    values = evaluate(expr, grid)

    gaps = np.abs(values - values[::-1])
    worst = int(np.argmax(gaps))
    if gaps[worst] > EVEN_TOL:
        # Report the positive representative of the pair.
        raise NotEven(float(abs(grid[worst])), float(gaps[worst]))

    deriv = differentiate(expr)
    evaluate(deriv, grid)
    _check_derivative(expr, deriv)

    magnitudes = np.abs(values)
    if allow_vanishing and np.all(magnitudes < VANISH_TOL):
        logger.warning("accepting phi = %s as identically zero", to_text(expr))
        return PrescribedFunction(expr, deriv, ZERO, True, vanishing_allowed=True)

    smallest = int(np.argmin(magnitudes))
    if magnitudes[smallest] < VANISH_TOL:
        raise Vanishing(float(grid[smallest]), float(values[smallest]))
    signs = np.sign(values)
    if np.any(signs != signs[0]):
        change = int(np.argmax(signs != signs[0]))
        raise Vanishing(float(grid[change]), float(values[change]))

    sign = POSITIVE if signs[0] > 0 else NEGATIVE
    logger.debug("validated phi = %s (%s)", to_text(expr), sign)
    return PrescribedFunction(expr, deriv, sign, True, vanishing_allowed=allow_vanishing)


def load_phi(src: str, allow_vanishing: bool = False) -> PrescribedFunction:
    """Parses and validates phi source text in one step."""
    return validate(parse_phi(src), allow_vanishing=allow_vanishing)
