"""Dual space curves, their jets, dual arc length and dual Frenet frames.

Three kinds of curve share one interface (:meth:`Curve.series`):

* :class:`ExprCurve` -- closed-form components, differentiated symbolically;
* :class:`NaturalCurve` -- defined by dual curvature/torsion functions and
  the Frenet equations, integrated numerically to the base point and
  expanded exactly around it;
* :class:`OffsetCurve` -- ``parent + c * (frame vector of parent)``, whose
  jets come from Taylor arithmetic on the parent's jets (no finite
  differences anywhere).
"""
from __future__ import annotations

import enum
import math
import threading
from dataclasses import dataclass
from typing import Protocol, Sequence

import numpy as np
from scipy.integrate import quad, solve_ivp

from . import expr as ex
from .dual import DualScalar
from .errors import (CausalMismatch, DegenerateJet, LightlikeNorm,
                     LightlikeVelocity, NotUnitSpeed, ValidationError)
from .lorentz import (CausalCharacter, DualVec3, causal_character,
                      causal_tolerance, cross, inner, norm)
from .series import DualSeries

DEGENERATE_RTOL = 1e-18
UNIT_SPEED_TOL = 1e-9


class FrameKind(enum.Enum):
    """``TIMELIKE_TNB``: timelike curve, frame {T, N, B}, (kappa, tau).
    ``SPACELIKE_TIMELIKE_BINORMAL``: spacelike curve with timelike binormal,
    frame {V1, V2, V3}, (P, Q)."""

    TIMELIKE_TNB = "timelike"
    SPACELIKE_TIMELIKE_BINORMAL = "spacelike"

    @classmethod
    def parse(cls, value) -> FrameKind:
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValidationError(f"unknown frame kind {value!r}; use 'timelike' or 'spacelike'") from None


@dataclass(frozen=True)
class CurveJet:
    t: float
    derivs: tuple[DualVec3, ...]

    @property
    def position(self) -> DualVec3:
        return self.derivs[0]

    @property
    def d1(self) -> DualVec3:
        return self.derivs[1]

    @property
    def d2(self) -> DualVec3:
        return self.derivs[2]

    @property
    def d3(self) -> DualVec3:
        return self.derivs[3]


@dataclass(frozen=True)
class FrenetData:
    frame_kind: FrameKind
    t: float
    T: DualVec3
    N: DualVec3
    B: DualVec3
    curvature: DualScalar
    torsion: DualScalar
    speed: DualScalar

    # names used for the spacelike frame
    V1 = property(lambda self: self.T)
    V2 = property(lambda self: self.N)
    V3 = property(lambda self: self.B)

    def vectors(self) -> tuple[DualVec3, DualVec3, DualVec3]:
        return self.T, self.N, self.B


def _vmap(fn, v: DualVec3) -> DualVec3:
    return DualVec3(fn(v.x), fn(v.y), fn(v.z))


def vderiv(v: DualVec3) -> DualVec3:
    return _vmap(lambda c: c.deriv(), v)


def vtruncate(v: DualVec3, order: int) -> DualVec3:
    return _vmap(lambda c: c.truncate(order), v)


class Curve:
    """Base class: subclasses provide :meth:`series`."""

    def series(self, t: float, order: int) -> DualVec3:
        """Position as a :class:`DualSeries` per component, to ``order``."""
        raise NotImplementedError

    def jet(self, t: float, order: int = 3) -> CurveJet:
        s = self.series(float(t), order)
        comps = [c.derivatives() for c in s]
        return CurveJet(float(t), tuple(DualVec3(comps[0][k], comps[1][k], comps[2][k])
                                        for k in range(order + 1)))

    def __call__(self, t: float) -> DualVec3:
        return self.jet(t, 0).position


class ExprCurve(Curve):
    """Closed-form dual curve ``alpha(t) + ε alpha*(t)``."""

    def __init__(self, real: Sequence, dual: Sequence | None = None):
        self.real = tuple(ex.as_expr(e) for e in real)
        self.dual = tuple(ex.as_expr(e) for e in (dual if dual is not None else (0, 0, 0)))
        if len(self.real) != 3 or len(self.dual) != 3:
            raise ValidationError("a curve needs exactly three real and three dual components")
        self._towers = [ex.DerivativeTower(e) for e in self.real + self.dual]

    @classmethod
    def from_strings(cls, x: str, y: str, z: str, dx: str = "0", dy: str = "0", dz: str = "0") -> ExprCurve:
        return cls([ex.parse(s) for s in (x, y, z)], [ex.parse(s) for s in (dx, dy, dz)])

    def differentiate(self) -> ExprCurve:
        return ExprCurve([e.diff() for e in self.real], [e.diff() for e in self.dual])

    def series(self, t, order):
        vals = [tw.values(t, order) for tw in self._towers]
        return DualVec3(*(DualSeries.from_derivatives(vals[i], vals[i + 3]) for i in range(3)))

    def __repr__(self):
        return f"ExprCurve(real={[str(e) for e in self.real]}, dual={[str(e) for e in self.dual]})"


def screw_dual_part(real: Sequence, axis: Sequence[float]) -> tuple[ex.Expr, ...]:
    """Components of ``axis ∧ alpha`` for a constant real ``axis``.

    ``x -> axis ∧ x`` is skew for the Lorentzian metric, so
    ``alpha + ε axis ∧ alpha`` is an infinitesimal isometric image of
    ``alpha`` (curvature and torsion keep zero dual parts).
    """
    a = [ex.as_expr(e) for e in real]
    w1, w2, w3 = (float(v) for v in axis)
    return (w3 * a[1] - w2 * a[2], w3 * a[0] - w1 * a[2], w1 * a[1] - w2 * a[0])


# --------------------------------------------------------------------------
# frames


def _check_velocity(d1: DualVec3, kind: FrameKind, t: float) -> None:
    ch = causal_character(d1.head())
    if ch is CausalCharacter.LIGHTLIKE:
        raise LightlikeVelocity(f"velocity is lightlike at t = {t!r}")
    want = CausalCharacter.TIMELIKE if kind is FrameKind.TIMELIKE_TNB else CausalCharacter.SPACELIKE
    if ch is not want:
        raise CausalMismatch(f"velocity is {ch.value} at t = {t!r}, frame kind {kind.value} needs {want.value}")


def _frame_vectors(d1: DualVec3, d2: DualVec3, kind: FrameKind, t: float):
    """Unit tangent, principal normal and binormal from the first two
    derivatives. Works for DualScalar and DualSeries components."""
    _check_velocity(d1, kind, t)
    vv = inner(d1, d1)
    speed = norm(d1)
    cr = cross(d1, d2)
    q = inner(cr, cr).head if isinstance(vv, DualSeries) else inner(cr, cr)
    e1, e2 = d1.real(), d2.real()
    if abs(q.re) <= DEGENERATE_RTOL * (e1 @ e1) * (e2 @ e2) or not np.any(e2):
        raise DegenerateJet(f"curvature vanishes at t = {t!r} (velocity and acceleration parallel)")
    proj = d2 - (inner(d1, d2) / vv) * d1
    if causal_character(proj.head()) is not CausalCharacter.SPACELIKE:
        raise CausalMismatch(f"principal normal is not spacelike at t = {t!r}; binormal would be spacelike")
    T = d1 / speed
    N = proj / norm(proj)
    # both frames positively oriented: det(T,N,B) = det(V1,V2,V3) = 1
    B = cross(T, N) if kind is FrameKind.TIMELIKE_TNB else cross(N, T)
    return T, N, B, speed, cr


def frenet(curve: Curve, t: float, kind: FrameKind | str = FrameKind.TIMELIKE_TNB) -> FrenetData:
    """Dual Frenet frame from the jet (no unit-speed assumption).

    curvature = ||a' ∧ a''|| / ||a'||^3 and torsion = det(a', a'', a''') /
    ||a' ∧ a''||^2, which is the coefficient in the frame equations for
    both kinds since both frames have determinant 1.
    """
    kind = FrameKind.parse(kind)
    jet = curve.jet(t, 3)
    T, N, B, speed, cr = _frame_vectors(jet.d1, jet.d2, kind, t)
    crn = norm(cr)
    curvature = crn / speed**3
    torsion = inner(cr, jet.d3) / (crn * crn)
    return FrenetData(kind, float(t), T, N, B, curvature, torsion, speed)


def frame_series(curve: Curve, t: float, kind: FrameKind, order: int):
    """(position, T, N, B) as Taylor series of ``order`` around ``t``."""
    pos = curve.series(t, order + 2)
    d1 = vderiv(pos)
    d2 = vderiv(d1)
    T, N, B, _, _ = _frame_vectors(vtruncate(d1, order), d2, kind, t)
    return vtruncate(pos, order), T, N, B


def frenet_unit_speed(curve: Curve, t: float, kind: FrameKind | str = FrameKind.TIMELIKE_TNB) -> FrenetData:
    """Curvature ||T'|| and torsion from N' for a unit-speed curve.

    Arc-length derivatives use the chain rule (divide by the dual speed);
    the torsion is the frame-equation coefficient <N', B>/<B, B>.
    """
    kind = FrameKind.parse(kind)
    pos = curve.series(t, 3)
    d1 = vderiv(pos)
    _check_velocity(d1, kind, t)
    speed = norm(d1)
    if abs(speed.head.re - 1.0) > UNIT_SPEED_TOL:
        raise NotUnitSpeed(f"speed is {speed.head.re!r} at t = {t!r}, expected 1")
    Tser = d1 / speed
    Ts = vderiv(Tser) / speed.truncate(1)
    try:
        kappa = norm(Ts)
    except LightlikeNorm:
        raise DegenerateJet(f"T' vanishes at t = {t!r}; principal normal undefined") from None
    if causal_character(Ts.head()) is not CausalCharacter.SPACELIKE:
        raise CausalMismatch(f"T' is not spacelike at t = {t!r}")
    N = Ts / kappa
    T1 = vtruncate(Tser, 1)
    B = cross(T1, N) if kind is FrameKind.TIMELIKE_TNB else cross(N, T1)
    Ns = vderiv(N) / speed.truncate(0)
    b0 = B.head()
    tors = inner(Ns.head(), b0) / inner(b0, b0)
    return FrenetData(kind, float(t), Tser.head(), N.head(), b0, kappa.head, tors, speed.head)


def dual_arc_length(curve: Curve, t0: float, t1: float, epsrel: float = 1e-12) -> DualScalar:
    """``∫ ||alpha~'(t)|| dt`` by adaptive quadrature, real and dual parts."""

    def speed(t):
        d1 = curve.jet(t, 1).d1
        if abs(inner(d1, d1).re) <= causal_tolerance(d1):
            raise LightlikeVelocity(f"velocity is lightlike at t = {t!r}")
        return norm(d1)

    opts = dict(epsabs=1e-14, epsrel=epsrel, limit=200)
    s, _ = quad(lambda t: speed(t).re, t0, t1, **opts)
    s_star, _ = quad(lambda t: speed(t).du, t0, t1, **opts)
    return DualScalar(s, s_star)


# --------------------------------------------------------------------------
# curves from natural equations


class ScalarFunction(Protocol):
    def series(self, t: float, order: int) -> DualSeries: ...


class DualExpr:
    """Dual scalar function ``f(t) + ε f*(t)`` from two expressions."""

    def __init__(self, re, du=0.0):
        self.re = ex.as_expr(re)
        self.du = ex.as_expr(du)
        self._towers = (ex.DerivativeTower(self.re), ex.DerivativeTower(self.du))

    def series(self, t, order):
        return DualSeries.from_derivatives(self._towers[0].values(t, order), self._towers[1].values(t, order))

    def __call__(self, t: float) -> DualScalar:
        return DualScalar(self.re.eval(t), self.du.eval(t))


def _law(kind: FrameKind, k: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Frenet coefficient matrices, shape (len, 3, 3), for coefficient
    arrays of curvature ``k`` and torsion ``w``."""
    a = np.zeros((len(k), 3, 3))
    a[:, 0, 1] = k
    a[:, 1, 2] = w
    if kind is FrameKind.TIMELIKE_TNB:
        a[:, 1, 0] = k
        a[:, 2, 1] = -w
    else:
        a[:, 1, 0] = -k
        a[:, 2, 1] = w
    return a


class NaturalCurve(Curve):
    """Unit-dual-speed curve with prescribed dual curvature and torsion.

    The frame obeys the Frenet equations of ``kind`` exactly; the frame at
    a parameter is obtained by integrating those equations (real and dual
    parts together) from the nearest node of a fixed lattice, so results
    depend only on ``t`` and not on the order of queries.
    """

    NODE_SPACING = 0.25
    RTOL = 1e-13
    ATOL = 1e-15

    def __init__(self, curvature: ScalarFunction, torsion: ScalarFunction,
                 kind: FrameKind | str = FrameKind.SPACELIKE_TIMELIKE_BINORMAL,
                 t_ref: float = 0.0, origin: DualVec3 | None = None,
                 frame: tuple[DualVec3, DualVec3, DualVec3] | None = None):
        self.curvature = curvature
        self.torsion = torsion
        self.kind = FrameKind.parse(kind)
        self.t_ref = float(t_ref)
        if frame is None:
            e1, e2, e3 = np.eye(3)
            f = (e1, e2, e3) if self.kind is FrameKind.TIMELIKE_TNB else (e2, e3, e1)
            frame = tuple(DualVec3.from_parts(v) for v in f)
        origin = origin if origin is not None else DualVec3.zero()
        y0 = np.concatenate([origin.real(), origin.dual()]
                            + [v.real() for v in frame] + [v.dual() for v in frame])
        self._nodes = {0: y0}
        self._lock = threading.Lock()

    def _rhs(self, t, y):
        k = self.curvature.series(t, 0).head
        w = self.torsion.series(t, 0).head
        a_re = _law(self.kind, np.array([k.re]), np.array([w.re]))[0]
        a_du = _law(self.kind, np.array([k.du]), np.array([w.du]))[0]
        f_re = y[6:15].reshape(3, 3)
        f_du = y[15:24].reshape(3, 3)
        return np.concatenate([f_re[0], f_du[0], (a_re @ f_re).ravel(), (a_re @ f_du + a_du @ f_re).ravel()])

    def _integrate(self, y, t0, t1):
        if t0 == t1:
            return y
        sol = solve_ivp(self._rhs, (t0, t1), y, method="DOP853", rtol=self.RTOL, atol=self.ATOL)
        if not sol.success:
            raise DegenerateJet(f"frame integration failed between {t0} and {t1}: {sol.message}")
        return sol.y[:, -1]

    def _node(self, k: int) -> np.ndarray:
        with self._lock:
            if k in self._nodes:
                return self._nodes[k]
        step = 1 if k > 0 else -1
        prev = self._node(k - step)
        y = self._integrate(prev, self.t_ref + (k - step) * self.NODE_SPACING, self.t_ref + k * self.NODE_SPACING)
        with self._lock:
            return self._nodes.setdefault(k, y)

    def state(self, t: float) -> np.ndarray:
        k = int(round((t - self.t_ref) / self.NODE_SPACING))
        return self._integrate(self._node(k), self.t_ref + k * self.NODE_SPACING, t)

    def series(self, t, order):
        y = self.state(t)
        kser = self.curvature.series(t, order)
        wser = self.torsion.series(t, order)
        a_re, a_du = _law(self.kind, kser.re, wser.re), _law(self.kind, kser.du, wser.du)
        f_re = np.zeros((order + 1, 3, 3))
        f_du = np.zeros((order + 1, 3, 3))
        f_re[0], f_du[0] = y[6:15].reshape(3, 3), y[15:24].reshape(3, 3)
        for n in range(order):
            acc_re = sum(a_re[j] @ f_re[n - j] for j in range(n + 1))
            acc_du = sum(a_re[j] @ f_du[n - j] + a_du[j] @ f_re[n - j] for j in range(n + 1))
            f_re[n + 1] = acc_re / (n + 1)
            f_du[n + 1] = acc_du / (n + 1)
        p_re = np.zeros((order + 1, 3))
        p_du = np.zeros((order + 1, 3))
        p_re[0], p_du[0] = y[0:3], y[3:6]
        for n in range(order):
            p_re[n + 1] = f_re[n, 0] / (n + 1)
            p_du[n + 1] = f_du[n, 0] / (n + 1)
        return DualVec3(*(DualSeries(p_re[:, i], p_du[:, i]) for i in range(3)))

    def frame(self, t: float) -> tuple[DualVec3, DualVec3, DualVec3]:
        """Frame vectors as integrated (before any re-derivation from jets)."""
        y = self.state(t)
        fr, fd = y[6:15].reshape(3, 3), y[15:24].reshape(3, 3)
        return tuple(DualVec3.from_parts(fr[i], fd[i]) for i in range(3))


# --------------------------------------------------------------------------
# offsets


class OffsetCurve(Curve):
    """``parent(t) + coefficient * W(t)`` with ``W`` a frame vector of the
    parent (index 0, 1, 2 for T/V1, N/V2, B/V3)."""

    def __init__(self, parent: Curve, kind: FrameKind | str, index: int, coefficient):
        self.parent = parent
        self.kind = FrameKind.parse(kind)
        self.index = int(index)
        self.coefficient = DualScalar.coerce(coefficient)

    def series(self, t, order):
        pos, *frame = frame_series(self.parent, t, self.kind, order)
        return pos + frame[self.index] * self.coefficient

    def __repr__(self):
        return f"OffsetCurve({self.parent!r} + {self.coefficient!r} * frame[{self.index}], {self.kind.value})"
