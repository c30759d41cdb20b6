"""Scalar expression trees in the parameter ``t``.

The grammar is closed under differentiation: constants, ``t``, sums,
products, scalar multiples and ``sin/cos/sinh/cosh/exp`` of an affine
argument ``a*t + b``. Smart constructors fold constants so repeated
differentiation does not blow the trees up.
"""
from __future__ import annotations

import ast
import math
from dataclasses import dataclass

from .errors import ExpressionError

FUNCTIONS = {
    "sin": math.sin,
    "cos": math.cos,
    "sinh": math.sinh,
    "cosh": math.cosh,
    "exp": math.exp,
}


class Expr:
    def __call__(self, t: float) -> float:
        return self.eval(t)

    def eval(self, t: float) -> float:
        raise NotImplementedError

    def diff(self) -> Expr:
        raise NotImplementedError

    def __add__(self, other):
        return add(self, as_expr(other))

    __radd__ = __add__

    def __sub__(self, other):
        return add(self, scale(-1.0, as_expr(other)))

    def __rsub__(self, other):
        return add(as_expr(other), scale(-1.0, self))

    def __neg__(self):
        return scale(-1.0, self)

    def __mul__(self, other):
        return mul(self, as_expr(other))

    __rmul__ = __mul__


@dataclass(frozen=True, eq=True)
class Const(Expr):
    value: float

    def eval(self, t):
        return self.value

    def diff(self):
        return ZERO

    def __str__(self):
        return repr(self.value)


@dataclass(frozen=True, eq=True)
class Param(Expr):
    def eval(self, t):
        return t

    def diff(self):
        return ONE

    def __str__(self):
        return "t"


@dataclass(frozen=True, eq=True)
class Sum(Expr):
    terms: tuple[Expr, ...]

    def eval(self, t):
        return math.fsum(e.eval(t) for e in self.terms)

    def diff(self):
        out = ZERO
        for e in self.terms:
            out = add(out, e.diff())
        return out

    def __str__(self):
        return "(" + " + ".join(str(e) for e in self.terms) + ")"


@dataclass(frozen=True, eq=True)
class Product(Expr):
    left: Expr
    right: Expr

    def eval(self, t):
        return self.left.eval(t) * self.right.eval(t)

    def diff(self):
        return add(mul(self.left.diff(), self.right), mul(self.left, self.right.diff()))

    def __str__(self):
        return f"{self.left}*{self.right}"


@dataclass(frozen=True, eq=True)
class Scale(Expr):
    factor: float
    expr: Expr

    def eval(self, t):
        return self.factor * self.expr.eval(t)

    def diff(self):
        return scale(self.factor, self.expr.diff())

    def __str__(self):
        return f"{self.factor!r}*{self.expr}"


_DERIVATIVE = {
    "sin": ("cos", 1.0),
    "cos": ("sin", -1.0),
    "sinh": ("cosh", 1.0),
    "cosh": ("sinh", 1.0),
    "exp": ("exp", 1.0),
}


@dataclass(frozen=True, eq=True)
class Func(Expr):
    """``name(slope*t + offset)``."""

    name: str
    slope: float
    offset: float

    def eval(self, t):
        return FUNCTIONS[self.name](self.slope * t + self.offset)

    def diff(self):
        target, sgn = _DERIVATIVE[self.name]
        return scale(sgn * self.slope, Func(target, self.slope, self.offset))

    def __str__(self):
        return f"{self.name}({self.slope!r}*t + {self.offset!r})"


ZERO = Const(0.0)
ONE = Const(1.0)
T = Param()


def as_expr(x) -> Expr:
    if isinstance(x, Expr):
        return x
    if isinstance(x, (int, float)):
        return Const(float(x))
    if isinstance(x, str):
        return parse(x)
    raise TypeError(f"cannot build an expression from {x!r}")


def is_zero(e: Expr) -> bool:
    return isinstance(e, Const) and e.value == 0.0


def add(a: Expr, b: Expr) -> Expr:
    if is_zero(a):
        return b
    if is_zero(b):
        return a
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value + b.value)
    ta = a.terms if isinstance(a, Sum) else (a,)
    tb = b.terms if isinstance(b, Sum) else (b,)
    return Sum(ta + tb)


def scale(c: float, e: Expr) -> Expr:
    if c == 0.0 or is_zero(e):
        return ZERO
    if c == 1.0:
        return e
    if isinstance(e, Const):
        return Const(c * e.value)
    if isinstance(e, Scale):
        return scale(c * e.factor, e.expr)
    return Scale(c, e)


def mul(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const):
        return scale(a.value, b)
    if isinstance(b, Const):
        return scale(b.value, a)
    if isinstance(a, Scale):
        return scale(a.factor, mul(a.expr, b))
    if isinstance(b, Scale):
        return scale(b.factor, mul(a, b.expr))
    return Product(a, b)


def func(name: str, arg: Expr | float | str = T) -> Expr:
    """``name(arg)`` for an affine ``arg``; constant arguments fold."""
    if name not in FUNCTIONS:
        raise ExpressionError(f"unknown function {name!r}; allowed: {sorted(FUNCTIONS)}")
    arg = as_expr(arg)
    slope_e = arg.diff()
    if not isinstance(slope_e, Const) or not is_zero(slope_e.diff()):
        raise ExpressionError(f"argument of {name} must be affine in t, got {arg}")
    slope = slope_e.value
    offset = arg.eval(0.0)
    if slope == 0.0:
        return Const(FUNCTIONS[name](offset))
    return Func(name, slope, offset)


class DerivativeTower:
    """Memoised successive derivatives of one expression."""

    def __init__(self, expr: Expr):
        self._exprs = [expr]

    def __getitem__(self, k: int) -> Expr:
        while len(self._exprs) <= k:
            self._exprs.append(self._exprs[-1].diff())
        return self._exprs[k]

    def values(self, t: float, order: int) -> list[float]:
        return [self[k].eval(t) for k in range(order + 1)]


def parse(text: str) -> Expr:
    """Parse ``'2*t'``, ``'cos(t)'``, ``'0.5*sinh(2*t + 1) - t*t'`` ...

    Operators ``+ - *`` and unary minus; functions sin, cos, sinh, cosh,
    exp with affine arguments; numeric literals; the name ``t``.
    """
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ExpressionError(f"cannot parse {text!r}: {exc.msg}") from None
    return _convert(tree.body, text)


def _convert(node: ast.AST, text: str) -> Expr:
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) \
            and not isinstance(node.value, bool):
        return Const(float(node.value))
    if isinstance(node, ast.Name):
        if node.id == "t":
            return T
        raise ExpressionError(f"unknown name {node.id!r} in {text!r}; only 't' is allowed")
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        inner = _convert(node.operand, text)
        return scale(-1.0, inner) if isinstance(node.op, ast.USub) else inner
    if isinstance(node, ast.BinOp):
        left, right = _convert(node.left, text), _convert(node.right, text)
        if isinstance(node.op, ast.Add):
            return add(left, right)
        if isinstance(node.op, ast.Sub):
            return add(left, scale(-1.0, right))
        if isinstance(node.op, ast.Mult):
            return mul(left, right)
        raise ExpressionError(f"operator {type(node.op).__name__} not supported in {text!r}")
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
        if len(node.args) != 1 or node.keywords:
            raise ExpressionError(f"{node.func.id} takes exactly one argument in {text!r}")
        return func(node.func.id, _convert(node.args[0], text))
    raise ExpressionError(f"unsupported syntax in {text!r}")
