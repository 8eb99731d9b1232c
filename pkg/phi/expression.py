"""Expression tree for the prescribed function phi(y).

Nodes are immutable dataclasses, so two trees compare equal exactly when they
have the same structure. Printing inserts the minimal parentheses needed for
the parser to rebuild the same tree.
"""

import math
from dataclasses import dataclass
from functools import singledispatch
from typing import Callable, Dict, Union

import numpy as np

from utils.errors import EvalError

ADD_PRECEDENCE = 1
MUL_PRECEDENCE = 2
NEG_PRECEDENCE = 3
POW_PRECEDENCE = 4
ATOM_PRECEDENCE = 5

FUNCTIONS = ("cos", "sin", "exp", "sqrt", "abs")

ArrayLike = Union[float, np.ndarray]


class Expression:
    """Base class of every node."""

    precedence = ATOM_PRECEDENCE

    def __str__(self) -> str:
        return to_text(self)

    @property
    def is_constant(self) -> bool:
        return not any(isinstance(node, Var) for node in walk(self))


@dataclass(frozen=True, eq=True)
class Const(Expression):
    value: float
    name: str = ""

    @property
    def precedence(self) -> int:
        return NEG_PRECEDENCE if self.value < 0 and not self.name else ATOM_PRECEDENCE


@dataclass(frozen=True, eq=True)
class Var(Expression):
    name: str = "y"


@dataclass(frozen=True, eq=True)
class Neg(Expression):
    operand: Expression
    precedence = NEG_PRECEDENCE


@dataclass(frozen=True, eq=True)
class BinaryOp(Expression):
    left: Expression
    right: Expression
    op_symbol = "?"


@dataclass(frozen=True, eq=True)
class Add(BinaryOp):
    precedence = ADD_PRECEDENCE
    op_symbol = "+"


@dataclass(frozen=True, eq=True)
class Sub(BinaryOp):
    precedence = ADD_PRECEDENCE
    op_symbol = "-"


@dataclass(frozen=True, eq=True)
class Mul(BinaryOp):
    precedence = MUL_PRECEDENCE
    op_symbol = "*"


@dataclass(frozen=True, eq=True)
class Div(BinaryOp):
    precedence = MUL_PRECEDENCE
    op_symbol = "/"


@dataclass(frozen=True, eq=True)
class Pow(Expression):
    base: Expression
    exponent: int
    precedence = POW_PRECEDENCE


@dataclass(frozen=True, eq=True)
class Call(Expression):
    function: str
    argument: Expression


PI = Const(math.pi, "pi")
ZERO = Const(0.0)
ONE = Const(1.0)


def walk(expr: Expression):
    """Yields every node of the tree, parents before children."""
    yield expr
    if isinstance(expr, Neg):
        yield from walk(expr.operand)
    elif isinstance(expr, BinaryOp):
        yield from walk(expr.left)
        yield from walk(expr.right)
    elif isinstance(expr, Pow):
        yield from walk(expr.base)
    elif isinstance(expr, Call):
        yield from walk(expr.argument)


def format_number(value: float) -> str:
    if value.is_integer() and abs(value) < 1e15:
        return str(int(value))
    return repr(value)


@singledispatch
def to_text(expr: Expression) -> str:
    raise TypeError(f"cannot print {type(expr).__name__}")


@to_text.register
def _(expr: Const) -> str:
    return expr.name or format_number(expr.value)


@to_text.register
def _(expr: Var) -> str:
    return expr.name


@to_text.register
def _(expr: Neg) -> str:
    inner = to_text(expr.operand)
    if expr.operand.precedence < NEG_PRECEDENCE:
        inner = f"({inner})"
    return f"-{inner}"


@to_text.register
def _(expr: BinaryOp) -> str:
    left = to_text(expr.left)
    right = to_text(expr.right)
    if expr.left.precedence < expr.precedence:
        left = f"({left})"
    if expr.right.precedence <= expr.precedence:
        right = f"({right})"
    if expr.precedence == MUL_PRECEDENCE:
        return f"{left}{expr.op_symbol}{right}"
    return f"{left} {expr.op_symbol} {right}"


@to_text.register
def _(expr: Pow) -> str:
    base = to_text(expr.base)
    if expr.base.precedence <= POW_PRECEDENCE:
        base = f"({base})"
    return f"{base}^{expr.exponent}"


@to_text.register
def _(expr: Call) -> str:
    return f"{expr.function}({to_text(expr.argument)})"


def _fault(y: np.ndarray, mask: np.ndarray, reason: str) -> EvalError:
    where = np.broadcast_to(y, mask.shape)[mask]
    return EvalError(float(where[0]), reason)


@singledispatch
def _evaluate(expr: Expression, y: np.ndarray) -> np.ndarray:
    raise TypeError(f"cannot evaluate {type(expr).__name__}")


@_evaluate.register
def _(expr: Const, y: np.ndarray) -> np.ndarray:
    return np.full_like(y, expr.value)


@_evaluate.register
def _(expr: Var, y: np.ndarray) -> np.ndarray:
    return y


@_evaluate.register
def _(expr: Neg, y: np.ndarray) -> np.ndarray:
    return -_evaluate(expr.operand, y)


@_evaluate.register
def _(expr: Add, y: np.ndarray) -> np.ndarray:
    return _evaluate(expr.left, y) + _evaluate(expr.right, y)


@_evaluate.register
def _(expr: Sub, y: np.ndarray) -> np.ndarray:
    return _evaluate(expr.left, y) - _evaluate(expr.right, y)


@_evaluate.register
def _(expr: Mul, y: np.ndarray) -> np.ndarray:
    return _evaluate(expr.left, y) * _evaluate(expr.right, y)


@_evaluate.register
def _(expr: Div, y: np.ndarray) -> np.ndarray:
    numerator = _evaluate(expr.left, y)
    denominator = _evaluate(expr.right, y)
    zero = denominator == 0
    if np.any(zero):
        raise _fault(y, zero, "division by zero")
    return numerator / denominator


@_evaluate.register
def _(expr: Pow, y: np.ndarray) -> np.ndarray:
    base = _evaluate(expr.base, y)
    if expr.exponent < 0:
        zero = base == 0
        if np.any(zero):
            raise _fault(y, zero, "zero raised to a negative power")
    return np.power(base, float(expr.exponent))


_NUMPY_FUNCTIONS: Dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "cos": np.cos,
    "sin": np.sin,
    "exp": np.exp,
    "sqrt": np.sqrt,
    "abs": np.abs,
}


@_evaluate.register
def _(expr: Call, y: np.ndarray) -> np.ndarray:
    argument = _evaluate(expr.argument, y)
    if expr.function == "sqrt":
        negative = argument < 0
        if np.any(negative):
            raise _fault(y, negative, "square root of a negative number")
    return _NUMPY_FUNCTIONS[expr.function](argument)


def evaluate(expr: Expression, y: ArrayLike) -> ArrayLike:
    """
    Evaluates an expression at a point or on an array of points.

    Args:
        expr: Expression tree.
        y: Scalar or array of abscissae.

    Returns:
        Values with the shape of ``y`` (a float for scalar input).

    Raises:
        EvalError: On division by zero, negative square roots or overflow.
    """
    points = np.asarray(y, dtype=float)
    with np.errstate(all="ignore"):
        values = _evaluate(expr, np.atleast_1d(points))
    values = np.broadcast_to(values, np.atleast_1d(points).shape)
    bad = ~np.isfinite(values)
    if np.any(bad):
        raise _fault(np.atleast_1d(points), bad, "non-finite value")
    if points.ndim == 0:
        return float(values[0])
    return values.copy()


@singledispatch
def _to_python(expr: Expression) -> str:
    raise TypeError(f"cannot compile {type(expr).__name__}")


@_to_python.register
def _(expr: Const) -> str:
    return repr(float(expr.value))


@_to_python.register
def _(expr: Var) -> str:
    return "y"


@_to_python.register
def _(expr: Neg) -> str:
    return f"(-{_to_python(expr.operand)})"


@_to_python.register
def _(expr: BinaryOp) -> str:
    return f"({_to_python(expr.left)} {expr.op_symbol} {_to_python(expr.right)})"


@_to_python.register
def _(expr: Pow) -> str:
    return f"({_to_python(expr.base)} ** {expr.exponent})"


@_to_python.register
def _(expr: Call) -> str:
    name = "fabs" if expr.function == "abs" else expr.function
    return f"{name}({_to_python(expr.argument)})"


def compile_scalar(expr: Expression) -> Callable[[float], float]:
    """
    Compiles an expression into a plain float function for the integrator.

    The compiled function skips domain checks; it is only built for
    expressions that already passed validation on [-1, 1].

    Args:
        expr: Expression tree.

    Returns:
        A callable mapping a float y to a float.
    """
    source = f"lambda y: {_to_python(expr)}"
    namespace = {name: getattr(math, name) for name in ("cos", "sin", "exp", "sqrt", "fabs")}
    return eval(compile(source, "<phi>", "eval"), namespace)
