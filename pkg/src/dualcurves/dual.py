"""Dual numbers a + εa* with ε² = 0."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

from .errors import DivisionByPureDual, DomainError

Real = Union[int, float]

ATOL = 1e-12
RTOL = 1e-12


@dataclass(frozen=True, slots=True)
class DualScalar:
    """An element ``re + ε du`` of the dual-number ring.

    Plain ints and floats are promoted to ``(x, 0)`` in every arithmetic
    operation. No ordering is defined.
    """

    re: float
    du: float = 0.0

    @classmethod
    def coerce(cls, value: DualScalar | Real) -> DualScalar:
        if isinstance(value, DualScalar):
            return value
        if isinstance(value, (int, float)):
            return cls(float(value), 0.0)
        raise TypeError(f"cannot interpret {value!r} as a dual number")

    def __add__(self, other):
        if not isinstance(other, (DualScalar, int, float)):
            return NotImplemented
        other = DualScalar.coerce(other)
        return DualScalar(self.re + other.re, self.du + other.du)

    __radd__ = __add__

    def __neg__(self):
        return DualScalar(-self.re, -self.du)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, (DualScalar, int, float)):
            return NotImplemented
        other = DualScalar.coerce(other)
        return DualScalar(self.re - other.re, self.du - other.du)

    def __rsub__(self, other):
        return DualScalar.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, DualScalar):
            return DualScalar(self.re * other.re, self.re * other.du + self.du * other.re)
        if isinstance(other, (int, float)):
            return DualScalar(self.re * other, self.du * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, (DualScalar, int, float)):
            return NotImplemented
        other = DualScalar.coerce(other)
        b = other.re
        if b == 0.0:
            raise DivisionByPureDual(f"division by pure dual number {other}")
        return DualScalar(self.re / b, (self.du * b - self.re * other.du) / (b * b))

    def __rtruediv__(self, other):
        return DualScalar.coerce(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return 1.0 / self**(-n)
        if n == 0:
            return DualScalar(1.0, 0.0)
        return DualScalar(self.re**n, n * self.re ** (n - 1) * self.du)

    def __abs__(self):
        return lift("abs", self)

    def sqrt(self) -> DualScalar:
        return lift("sqrt", self)

    def conjugate(self) -> DualScalar:
        return DualScalar(self.re, -self.du)

    def is_pure_dual(self) -> bool:
        return self.re == 0.0

    def __iter__(self):
        yield self.re
        yield self.du

    def __repr__(self):
        return f"DualScalar({self.re!r}, {self.du!r})"

    def __str__(self):
        sign = "-" if math.copysign(1.0, self.du) < 0 else "+"
        return f"{self.re:g} {sign} ε{abs(self.du):g}"


ZERO = DualScalar(0.0, 0.0)
ONE = DualScalar(1.0, 0.0)
EPS = DualScalar(0.0, 1.0)


def dual(value, du: float = 0.0) -> DualScalar:
    if isinstance(value, DualScalar):
        return value
    return DualScalar(float(value), float(du))


def isclose(a, b, atol: float = ATOL, rtol: float = RTOL) -> bool:
    """Componentwise ``|Δ| <= atol + rtol*|b|`` on real and dual parts."""
    a, b = DualScalar.coerce(a), DualScalar.coerce(b)
    return (abs(a.re - b.re) <= atol + rtol * abs(b.re)
            and abs(a.du - b.du) <= atol + rtol * abs(b.du))


# name -> (f, f', domain predicate, domain description)
_Entry = tuple[Callable[[float], float], Callable[[float], float], Callable[[float], bool], str]

def _sign(x: float) -> float:
    return 1.0 if x > 0 else -1.0


REGISTRY: dict[str, _Entry] = {
    "sin": (math.sin, math.cos, math.isfinite, "finite"),
    "cos": (math.cos, lambda x: -math.sin(x), math.isfinite, "finite"),
    "sinh": (math.sinh, math.cosh, math.isfinite, "finite"),
    "cosh": (math.cosh, math.sinh, math.isfinite, "finite"),
    "exp": (math.exp, math.exp, math.isfinite, "finite"),
    "sqrt": (math.sqrt, lambda x: 0.5 / math.sqrt(x), lambda x: x > 0.0, "re > 0"),
    "atanh": (math.atanh, lambda x: 1.0 / (1.0 - x * x), lambda x: -1.0 < x < 1.0, "|re| < 1"),
    "abs": (abs, _sign, lambda x: x != 0.0, "re != 0"),
}


def lift(f: str, a) -> DualScalar:
    """Taylor lift ``f(a + εa*) = f(a) + εa* f'(a)`` for a registry function."""
    try:
        fn, deriv, ok, what = REGISTRY[f]
    except KeyError:
        raise ValueError(f"no dual lift registered for {f!r}") from None
    a = DualScalar.coerce(a)
    if not ok(a.re):
        raise DomainError(f"{f} lift needs {what}, got re = {a.re!r}")
    return DualScalar(fn(a.re), a.du * deriv(a.re))


def sin(a): return lift("sin", a)
def cos(a): return lift("cos", a)
def sinh(a): return lift("sinh", a)
def cosh(a): return lift("cosh", a)
def exp(a): return lift("exp", a)
def sqrt(a): return lift("sqrt", a)
def atanh(a): return lift("atanh", a)
def tanh(a): return sinh(a) / cosh(a)


def sign(a) -> float:
    """Sign of the real part (the only ordering the ring supports)."""
    return _sign(DualScalar.coerce(a).re)
