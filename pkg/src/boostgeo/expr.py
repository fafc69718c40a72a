"""Compile arithmetic expressions in ``s`` into jet-aware callables.

Only numbers, the variable ``s``, the constants ``pi`` and ``e``, the four
arithmetic operators, ``**`` and a fixed set of elementary functions are
accepted; anything else is rejected before evaluation.
"""

from __future__ import annotations

import ast
import math
import operator

from . import jets

FUNCTIONS = {
    "sin": jets.sin,
    "cos": jets.cos,
    "tan": jets.tan,
    "sinh": jets.sinh,
    "cosh": jets.cosh,
    "exp": jets.exp,
    "log": jets.log,
    "sqrt": jets.sqrt,
    "atan": jets.atan,
    "arctan": jets.atan,
    "asin": jets.asin,
}
CONSTANTS = {"pi": math.pi, "e": math.e}
_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}
_UNARY = {ast.USub: operator.neg, ast.UAdd: operator.pos}


class ExpressionError(ValueError):
    pass


def _build(node):
    if isinstance(node, ast.Expression):
        return _build(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
        v = float(node.value)
        return lambda s: v
    if isinstance(node, ast.Name):
        if node.id == "s":
            return lambda s: s
        if node.id in CONSTANTS:
            v = CONSTANTS[node.id]
            return lambda s: v
        raise ExpressionError(f"unknown name {node.id!r}")
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        op = _BINOPS[type(node.op)]
        left, right = _build(node.left), _build(node.right)
        return lambda s: op(left(s), right(s))
    if isinstance(node, ast.UnaryOp) and type(node.op) in _UNARY:
        op = _UNARY[type(node.op)]
        arg = _build(node.operand)
        return lambda s: op(arg(s))
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and not node.keywords:
        fn = FUNCTIONS.get(node.func.id)
        if fn is None:
            raise ExpressionError(f"unknown function {node.func.id!r}")
        if len(node.args) != 1:
            raise ExpressionError(f"{node.func.id} takes exactly one argument")
        arg = _build(node.args[0])
        return lambda s: fn(arg(s))
    raise ExpressionError(f"unsupported syntax: {ast.dump(node)}")


def compile_expression(text):
    """Return a callable ``f(s)`` evaluating ``text``; ``s`` may be a float or a Jet."""
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError as exc:
        raise ExpressionError(f"cannot parse {text!r}: {exc.msg}") from None
    fn = _build(tree)
    fn.source = text
    return fn
