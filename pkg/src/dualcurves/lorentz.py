"""Dual Lorentzian 3-space: vectors over D with the (-,+,+) metric."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Any, Iterable

import numpy as np

from .dual import DualScalar, ONE, ZERO
from .errors import DomainError, LightlikeNorm, PlaneCharacterUndetermined

CAUSAL_RTOL = 1e-12


def _head(c) -> DualScalar:
    # DualSeries exposes its order-0 coefficient as .head
    h = getattr(c, "head", None)
    return h if h is not None else DualScalar.coerce(c)


@dataclass(frozen=True, slots=True)
class DualVec3:
    """Triple of dual components; the first carries the negative metric sign.

    Components are normally :class:`DualScalar`, but any ring element with
    ``+ - * /``, ``abs()`` and ``.sqrt()`` works (the curve module uses
    truncated Taylor series).
    """

    x: Any
    y: Any
    z: Any

    @classmethod
    def from_parts(cls, real: Iterable[float], dual: Iterable[float] = (0.0, 0.0, 0.0)) -> DualVec3:
        r, d = list(real), list(dual)
        return cls(*(DualScalar(float(a), float(b)) for a, b in zip(r, d)))

    @classmethod
    def zero(cls) -> DualVec3:
        return cls(ZERO, ZERO, ZERO)

    def __iter__(self):
        yield self.x
        yield self.y
        yield self.z

    def __add__(self, other: DualVec3) -> DualVec3:
        if not isinstance(other, DualVec3):
            return NotImplemented
        return DualVec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: DualVec3) -> DualVec3:
        if not isinstance(other, DualVec3):
            return NotImplemented
        return DualVec3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self) -> DualVec3:
        return DualVec3(-self.x, -self.y, -self.z)

    def __mul__(self, k) -> DualVec3:
        if isinstance(k, DualVec3):
            return NotImplemented
        return DualVec3(self.x * k, self.y * k, self.z * k)

    def __rmul__(self, k) -> DualVec3:
        if isinstance(k, DualVec3):
            return NotImplemented
        return DualVec3(k * self.x, k * self.y, k * self.z)

    def __truediv__(self, k) -> DualVec3:
        return DualVec3(self.x / k, self.y / k, self.z / k)

    def real(self) -> np.ndarray:
        return np.array([_head(c).re for c in self])

    def dual(self) -> np.ndarray:
        return np.array([_head(c).du for c in self])

    def head(self) -> DualVec3:
        return DualVec3(*(_head(c) for c in self))

    def is_zero(self) -> bool:
        return not np.any(self.real()) and not np.any(self.dual())

    def max_abs(self) -> float:
        return float(max(np.max(np.abs(self.real())), np.max(np.abs(self.dual()))))


def inner(a: DualVec3, b: DualVec3):
    """Lorentzian inner product ``-a1 b1 + a2 b2 + a3 b3`` extended over D."""
    return -(a.x * b.x) + a.y * b.y + a.z * b.z


def real_inner(a: np.ndarray, b: np.ndarray) -> float:
    return float(-a[0] * b[0] + a[1] * b[1] + a[2] * b[2])


def cross(a: DualVec3, b: DualVec3) -> DualVec3:
    """Lorentzian cross product; ``<cross(a, b), c> = det(a, b, c)``."""
    return DualVec3(
        a.z * b.y - a.y * b.z,
        a.z * b.x - a.x * b.z,
        a.x * b.y - a.y * b.x,
    )


def det(a: DualVec3, b: DualVec3, c: DualVec3):
    return inner(cross(a, b), c)


def causal_tolerance(a: DualVec3) -> float:
    r = a.real()
    return CAUSAL_RTOL * max(1.0, float(r @ r))


def norm(a: DualVec3):
    """``sqrt(|<A, A>|)`` computed in the dual ring.

    Raises :class:`LightlikeNorm` when the real part is null (or zero).
    """
    q = inner(a, a)
    qh = _head(q).re
    if abs(qh) <= causal_tolerance(a):
        raise LightlikeNorm(f"norm undefined: <a, a> = {qh:.3e} is within tolerance of 0")
    return abs(q).sqrt()


def normalize(a: DualVec3) -> DualVec3:
    return a / norm(a)


class CausalCharacter(enum.Enum):
    TIMELIKE = "timelike"
    SPACELIKE = "spacelike"
    LIGHTLIKE = "lightlike"


def causal_character(a: DualVec3) -> CausalCharacter:
    q = _head(inner(a, a)).re
    tol = causal_tolerance(a)
    if q < -tol:
        return CausalCharacter.TIMELIKE
    if q > tol or a.is_zero():
        return CausalCharacter.SPACELIKE
    return CausalCharacter.LIGHTLIKE


class AngleKind(enum.Enum):
    HYPERBOLIC = "hyperbolic"
    CENTRAL = "central"
    SPACELIKE = "spacelike"
    LORENTZIAN_TIMELIKE = "lorentzian_timelike"


@dataclass(frozen=True)
class DualAngle:
    kind: AngleKind
    value: DualScalar


def _arccosh_dual(c: DualScalar) -> DualScalar:
    if c.re < 1.0 - 1e-12:
        raise DomainError(f"cosh of the angle would be {c.re!r} < 1")
    theta = math.acosh(max(c.re, 1.0))
    s = math.sinh(theta)
    # theta = 0: cosh is flat there, the dual part cannot be recovered
    return DualScalar(theta, c.du / s if s > 1e-8 else 0.0)


def _arccos_dual(c: DualScalar) -> DualScalar:
    if abs(c.re) > 1.0 + 1e-12:
        raise DomainError(f"cos of the angle would be {c.re!r}")
    theta = math.acos(min(1.0, max(-1.0, c.re)))
    s = math.sin(theta)
    return DualScalar(theta, -c.du / s if s > 1e-8 else 0.0)


def _arcsinh_dual(c: DualScalar) -> DualScalar:
    theta = math.asinh(c.re)
    return DualScalar(theta, c.du / math.cosh(theta))


def plane_gram(a: DualVec3, b: DualVec3) -> float:
    """``<a,a><b,b> - <a,b>^2`` on real parts; < 0 means a timelike plane."""
    ar, br = a.real(), b.real()
    return real_inner(ar, ar) * real_inner(br, br) - real_inner(ar, br) ** 2


def angle_between(a: DualVec3, b: DualVec3) -> DualAngle:
    """Dual angle between two non-null dual vectors.

    The kind follows the causal characters of the pair (and, for two
    spacelike vectors, the character of the plane they span). The value is
    symmetric in ``a`` and ``b`` because the inner product is.
    """
    ca, cb = causal_character(a), causal_character(b)
    if CausalCharacter.LIGHTLIKE in (ca, cb):
        raise LightlikeNorm("angle undefined for a lightlike vector")
    c = _head(inner(a, b) / (norm(a) * norm(b)))
    if ca is CausalCharacter.TIMELIKE and cb is CausalCharacter.TIMELIKE:
        return DualAngle(AngleKind.HYPERBOLIC, _arccosh_dual(-c))
    if ca is CausalCharacter.SPACELIKE and cb is CausalCharacter.SPACELIKE:
        g = plane_gram(a, b)
        tol = CAUSAL_RTOL * max(1.0, float(a.real() @ a.real()) * float(b.real() @ b.real()))
        if g < -tol:
            return DualAngle(AngleKind.CENTRAL, _arccosh_dual(c))
        if g > tol:
            return DualAngle(AngleKind.SPACELIKE, _arccos_dual(c))
        raise PlaneCharacterUndetermined(f"Gram determinant {g:.3e} within tolerance of 0")
    return DualAngle(AngleKind.LORENTZIAN_TIMELIKE, _arcsinh_dual(c))


def on_unit_sphere(a: DualVec3, atol: float = 1e-12) -> bool:
    """Predicate for the dual unit sphere ``||A|| = (1, 0)``."""
    try:
        n = _head(norm(a))
    except LightlikeNorm:
        return False
    return abs(n.re - 1.0) <= atol and abs(n.du) <= atol


E1 = DualVec3(ONE, ZERO, ZERO)
E2 = DualVec3(ZERO, ONE, ZERO)
E3 = DualVec3(ZERO, ZERO, ONE)
