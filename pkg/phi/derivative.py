"""Symbolic derivative with respect to y.

Only zeros and ones are folded away; no further simplification is attempted.
"""

from functools import singledispatch

from phi.expression import (
    ONE,
    ZERO,
    Add,
    Call,
    Const,
    Div,
    Expression,
    Mul,
    Neg,
    Pow,
    Sub,
    Var,
)

TWO = Const(2.0)


def _is(expr: Expression, value: float) -> bool:
    return isinstance(expr, Const) and not expr.name and expr.value == value


def _add(left: Expression, right: Expression) -> Expression:
    if _is(left, 0.0):
        return right
    if _is(right, 0.0):
        return left
    return Add(left, right)


def _sub(left: Expression, right: Expression) -> Expression:
    if _is(right, 0.0):
        return left
    if _is(left, 0.0):
        return _neg(right)
    return Sub(left, right)


def _neg(expr: Expression) -> Expression:
    if _is(expr, 0.0):
        return ZERO
    if isinstance(expr, Neg):
        return expr.operand
    return Neg(expr)


def _mul(left: Expression, right: Expression) -> Expression:
    if _is(left, 0.0) or _is(right, 0.0):
        return ZERO
    if _is(left, 1.0):
        return right
    if _is(right, 1.0):
        return left
    if isinstance(left, Neg):
        return _neg(_mul(left.operand, right))
    if isinstance(right, Neg):
        return _neg(_mul(left, right.operand))
    return Mul(left, right)


def _div(left: Expression, right: Expression) -> Expression:
    if _is(left, 0.0):
        return ZERO
    if _is(right, 1.0):
        return left
    return Div(left, right)


def _pow(base: Expression, exponent: int) -> Expression:
    if exponent == 0:
        return ONE
    if exponent == 1:
        return base
    return Pow(base, exponent)


@singledispatch
def differentiate(expr: Expression) -> Expression:
    """
    Returns the exact derivative d expr / dy.

    Args:
        expr: Expression tree.

    Returns:
        The derivative tree.
    """
    raise TypeError(f"cannot differentiate {type(expr).__name__}")


@differentiate.register
def _(expr: Const) -> Expression:
    return ZERO


@differentiate.register
def _(expr: Var) -> Expression:
    return ONE


@differentiate.register
def _(expr: Neg) -> Expression:
    return _neg(differentiate(expr.operand))


@differentiate.register
def _(expr: Add) -> Expression:
    return _add(differentiate(expr.left), differentiate(expr.right))


@differentiate.register
def _(expr: Sub) -> Expression:
    return _sub(differentiate(expr.left), differentiate(expr.right))


@differentiate.register
def _(expr: Mul) -> Expression:
    return _add(
        _mul(differentiate(expr.left), expr.right),
        _mul(expr.left, differentiate(expr.right)),
    )


@differentiate.register
def _(expr: Div) -> Expression:
    numerator = _sub(
        _mul(differentiate(expr.left), expr.right),
        _mul(expr.left, differentiate(expr.right)),
    )
    return _div(numerator, _pow(expr.right, 2))


@differentiate.register
def _(expr: Pow) -> Expression:
    outer = _mul(Const(float(expr.exponent)), _pow(expr.base, expr.exponent - 1))
    return _mul(outer, differentiate(expr.base))


@differentiate.register
def _(expr: Call) -> Expression:
    u = expr.argument
    du = differentiate(u)
    if expr.function == "sin":
        outer = Call("cos", u)
    elif expr.function == "cos":
        outer = _neg(Call("sin", u))
    elif expr.function == "exp":
        outer = expr
    elif expr.function == "sqrt":
        return _div(du, _mul(TWO, expr))
    elif expr.function == "abs":
        outer = _div(u, expr)
    else:
        raise TypeError(f"unknown function {expr.function}")
    return _mul(outer, du)
