"""Truncated Taylor series with dual-number coefficients.

A :class:`DualSeries` of order ``n`` stores the coefficients ``c_k = f^(k)(t)/k!``
for ``k = 0..n`` of a dual-valued function ``f = f_re + ε f_du`` around a
parameter value, as two real arrays. Arithmetic is exact up to the
truncation order, which is what lets offset curves carry exact jets.
"""
from __future__ import annotations

import math

import numpy as np

from .dual import DualScalar
from .errors import DivisionByPureDual, DomainError


def _mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.convolve(a, b)[: len(a)]


def _reciprocal(b: np.ndarray) -> np.ndarray:
    if b[0] == 0.0:
        raise DivisionByPureDual("series reciprocal of a pure dual leading term")
    r = np.zeros_like(b)
    r[0] = 1.0 / b[0]
    for k in range(1, len(b)):
        r[k] = -r[0] * np.dot(b[1 : k + 1], r[k - 1 :: -1][:k])
    return r


def _sqrt(a: np.ndarray) -> np.ndarray:
    if a[0] <= 0.0:
        raise DomainError(f"series sqrt needs a positive leading term, got {a[0]!r}")
    s = np.zeros_like(a)
    s[0] = math.sqrt(a[0])
    for k in range(1, len(a)):
        acc = np.dot(s[1:k], s[k - 1 : 0 : -1]) if k > 1 else 0.0
        s[k] = (a[k] - acc) / (2.0 * s[0])
    return s


class DualSeries:
    __slots__ = ("re", "du")

    def __init__(self, re, du=None):
        self.re = np.asarray(re, dtype=float)
        self.du = np.zeros_like(self.re) if du is None else np.asarray(du, dtype=float)

    @property
    def order(self) -> int:
        return len(self.re) - 1

    @property
    def head(self) -> DualScalar:
        return DualScalar(float(self.re[0]), float(self.du[0]))

    @classmethod
    def constant(cls, value, order: int) -> DualSeries:
        v = DualScalar.coerce(value)
        re, du = np.zeros(order + 1), np.zeros(order + 1)
        re[0], du[0] = v.re, v.du
        return cls(re, du)

    @classmethod
    def from_derivatives(cls, re_derivs, du_derivs) -> DualSeries:
        """Build from ``f^(k)`` values (not yet divided by ``k!``)."""
        fact = np.array([math.factorial(k) for k in range(len(re_derivs))], dtype=float)
        return cls(np.asarray(re_derivs, float) / fact, np.asarray(du_derivs, float) / fact)

    def derivatives(self) -> list[DualScalar]:
        """``f^(k)(t)`` for ``k = 0..order``."""
        return [DualScalar(float(self.re[k] * math.factorial(k)), float(self.du[k] * math.factorial(k)))
                for k in range(self.order + 1)]

    def truncate(self, order: int) -> DualSeries:
        return DualSeries(self.re[: order + 1], self.du[: order + 1])

    def deriv(self) -> DualSeries:
        """Series of ``f'``; one order shorter."""
        k = np.arange(1, len(self.re))
        return DualSeries(self.re[1:] * k, self.du[1:] * k)

    def _wrap(self, other) -> DualSeries | None:
        if isinstance(other, DualSeries):
            if len(other.re) != len(self.re):
                n = min(len(other.re), len(self.re)) - 1
                raise ValueError(f"series orders differ; truncate to {n} first")
            return other
        if isinstance(other, (DualScalar, int, float)):
            return DualSeries.constant(other, self.order)
        return None

    def __add__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return DualSeries(self.re + o.re, self.du + o.du)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return DualSeries(self.re - o.re, self.du - o.du)

    def __rsub__(self, other):
        o = self._wrap(other)
        return NotImplemented if o is None else o - self

    def __neg__(self):
        return DualSeries(-self.re, -self.du)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return DualSeries(self.re * other, self.du * other)
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return DualSeries(_mul(self.re, o.re), _mul(self.re, o.du) + _mul(self.du, o.re))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return DualSeries(self.re / other, self.du / other)
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        r = _reciprocal(o.re)
        q = _mul(self.re, r)
        # (a + εa*)/(b + εb*) = a/b + ε(a* - (a/b) b*)/b
        return DualSeries(q, _mul(self.du - _mul(q, o.du), r))

    def __rtruediv__(self, other):
        o = self._wrap(other)
        return NotImplemented if o is None else o / self

    def __abs__(self):
        if self.re[0] == 0.0:
            raise DomainError("abs of a series with zero leading real part")
        return self if self.re[0] > 0 else -self

    def sqrt(self) -> DualSeries:
        s = _sqrt(self.re)
        return DualSeries(s, _mul(self.du, _reciprocal(2.0 * s)))

    def __repr__(self):
        return f"DualSeries(re={self.re.tolist()}, du={self.du.tolist()})"
