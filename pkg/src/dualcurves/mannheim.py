"""Dual timelike-spacelike Mannheim pairs: construction and verification.

A pair is a dual timelike curve ``alpha`` (frame T, N, B; curvature kappa,
torsion tau) and a dual spacelike curve ``beta`` with timelike binormal
(frame V1, V2, V3; curvature P, torsion Q) such that B and V2 span the same
line at corresponding points, with ``beta = alpha + lambda B`` and
``alpha = beta - lambda V2``.

:func:`verify_pair` never asserts anything about the pair; it measures the
residual of each curvature/torsion identity at every grid point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import dual as dn
from . import expr as ex
from .curve import (Curve, DualExpr, ExprCurve, FrameKind, FrenetData,
                    NaturalCurve, OffsetCurve, frenet, screw_dual_part)
from .dual import DualScalar
from .errors import (AtanhDomain, DegenerateCondition, DegenerateJet,
                     DomainError, GridTooSmall, LambdaZero, NumericalDegeneracy,
                     OrientationFlip, ValidationError)
from .lorentz import (AngleKind, DualAngle, DualVec3, cross, inner, norm)
from .series import DualSeries

TIMELIKE = FrameKind.TIMELIKE_TNB
SPACELIKE = FrameKind.SPACELIKE_TIMELIKE_BINORMAL


def _check_lambda(lam) -> DualScalar:
    lam = DualScalar.coerce(lam)
    if lam.re == 0.0:
        raise LambdaZero(f"lambda = {lam!r} is pure dual; its real part must be nonzero")
    return lam


def offset_from_timelike(alpha: Curve, lam, at: float = 0.0) -> OffsetCurve:
    """``beta(t) = alpha(t) + lambda B(t)``; ``alpha`` is probed at ``at``."""
    lam = _check_lambda(lam)
    frenet(alpha, at, TIMELIKE)
    return OffsetCurve(alpha, TIMELIKE, 2, lam)


def partner_from_spacelike(beta: Curve, lam, at: float = 0.0) -> OffsetCurve:
    """``alpha(t) = beta(t) - lambda V2(t)``; ``beta`` is probed at ``at``."""
    lam = _check_lambda(lam)
    frenet(beta, at, SPACELIKE)
    return OffsetCurve(beta, SPACELIKE, 1, -lam)


def solve_lambda(beta: Curve, t: float) -> DualScalar:
    """``lambda = P / (Q^2 - P^2)`` from the frame of ``beta`` at ``t``."""
    f = frenet(beta, t, SPACELIKE)
    P, Q = f.curvature, f.torsion
    d = Q * Q - P * P
    if abs(d.re) <= 1e-12 * max(1.0, P.re * P.re):
        raise DegenerateCondition(f"Q^2 - P^2 = {d.re:.3e} at t = {t!r}; no finite lambda")
    lam = P / d
    if lam.re == 0.0:
        raise LambdaZero(f"lambda = {lam!r} is pure dual at t = {t!r}")
    return lam


class MannheimTorsion:
    """Torsion ``Q = sqrt(P^2 + P/lambda)``, the positive root of
    ``lambda (Q^2 - P^2) = P`` for a given dual curvature function."""

    def __init__(self, curvature, lam):
        self.curvature = curvature
        self.lam = _check_lambda(lam)

    def series(self, t, order) -> DualSeries:
        P = self.curvature.series(t, order)
        return (P * P + P / self.lam).sqrt()


@dataclass(frozen=True)
class MannheimPair:
    """``alpha`` timelike, ``beta`` spacelike with timelike binormal.

    ``offset_along_b`` is the signed coefficient ``c`` in ``beta = alpha + c B``;
    it equals ``lam`` for pairs built from ``alpha`` and ``o * lam`` for
    pairs built from ``beta`` (``o`` the sign relating ``V2`` to ``B``).
    """

    alpha: Curve
    beta: Curve
    lam: DualScalar
    built_from: FrameKind = TIMELIKE
    orientation_sign: Optional[int] = None

    @classmethod
    def from_timelike(cls, alpha: Curve, lam, at: float = 0.0) -> MannheimPair:
        return cls(alpha, offset_from_timelike(alpha, lam, at), DualScalar.coerce(lam), TIMELIKE)

    @classmethod
    def from_spacelike(cls, beta: Curve, lam, at: float = 0.0) -> MannheimPair:
        return cls(partner_from_spacelike(beta, lam, at), beta, DualScalar.coerce(lam), SPACELIKE)

    def offset_along_b(self, orientation: int) -> DualScalar:
        return self.lam if self.built_from is TIMELIKE else self.lam * float(orientation)


def natural_pair(curvature, lam, t_ref: float = 0.0) -> MannheimPair:
    """Genuine pair from a prescribed dual curvature of ``beta``.

    ``beta`` is the unit-speed spacelike curve with curvature ``P`` and
    torsion ``sqrt(P^2 + P/lambda)``, so the Mannheim condition holds
    identically and ``alpha = beta - lambda V2`` is the timelike partner.
    A timelike partner needs ``1 + lambda P < 0``; with ``P`` decreasing
    (real parts) the binormal of ``alpha`` equals ``+V2``.
    """
    lam = _check_lambda(lam)
    if not isinstance(curvature, DualExpr):
        curvature = DualExpr(*curvature) if isinstance(curvature, tuple) else DualExpr(curvature)
    beta = NaturalCurve(curvature, MannheimTorsion(curvature, lam), SPACELIKE, t_ref=t_ref)
    return MannheimPair.from_spacelike(beta, lam, at=t_ref)


def helix_pair(a: float, b: float, axis=(0.0, 0.0, 0.0)) -> MannheimPair:
    """Constant-curvature recipe: ``beta = (a sinh t, a cosh t, b t)`` with
    dual part ``axis ∧ beta`` and lambda from the Mannheim condition.

    The partner of a helix is its axis, a straight line, so ``alpha`` has
    no Frenet frame; kept to document that degeneracy.
    """
    real = (f"{a!r}*sinh(t)", f"{a!r}*cosh(t)", f"{b!r}*t")
    re_exprs = [ex.parse(s) for s in real]
    beta = ExprCurve(re_exprs, screw_dual_part(re_exprs, axis))
    lam = solve_lambda(beta, 0.0)
    return MannheimPair(OffsetCurve(beta, SPACELIKE, 1, -lam), beta, lam, SPACELIKE)


def phi_between(lam, P, Q) -> DualAngle:
    """Dual angle between T and V1 from ``tanh(Phi) = (1 + lambda P)/(lambda Q)``."""
    lam, P, Q = (DualScalar.coerce(v) for v in (lam, P, Q))
    den = lam * Q
    if den.re == 0.0:
        raise AtanhDomain("lambda Q has zero real part")
    ratio = (1.0 + lam * P) / den
    if not -1.0 < ratio.re < 1.0:
        raise AtanhDomain(f"tanh(Phi) would be {ratio.re!r}, outside (-1, 1)")
    return DualAngle(AngleKind.LORENTZIAN_TIMELIKE, dn.atanh(ratio))


@dataclass(frozen=True)
class Grid:
    """``n`` equally spaced parameters on ``[t0, t1]``."""

    t0: float
    t1: float
    n: int
    min_points: int = 7

    def __post_init__(self):
        if not (math.isfinite(self.t0) and math.isfinite(self.t1)):
            raise ValidationError(f"grid bounds must be finite, got [{self.t0}, {self.t1}]")
        if self.n < self.min_points:
            raise GridTooSmall(f"grid has {self.n} points, at least {self.min_points} are needed")
        if self.n > 1 and not self.t0 < self.t1:
            raise ValidationError(f"grid needs t0 < t1, got [{self.t0}, {self.t1}]")

    @property
    def step(self) -> float:
        return (self.t1 - self.t0) / (self.n - 1) if self.n > 1 else 0.0

    def points(self) -> list[float]:
        return [float(x) for x in np.linspace(self.t0, self.t1, self.n)]


@dataclass(frozen=True)
class MannheimSample:
    t: float
    alpha: DualVec3
    beta: DualVec3
    alpha_frame: FrenetData
    beta_frame: FrenetData
    phi: Optional[DualAngle]
    speed_ratio: DualScalar
    distance: DualScalar


def sample_pair(pair: MannheimPair, t: float) -> MannheimSample:
    fa = frenet(pair.alpha, t, TIMELIKE)
    fb = frenet(pair.beta, t, SPACELIKE)
    a, b = pair.alpha(t), pair.beta(t)
    try:
        phi = phi_between(pair.lam, fb.curvature, fb.torsion)
    except AtanhDomain:
        phi = None
    return MannheimSample(float(t), a, b, fa, fb, phi, fb.speed / fa.speed, norm(b - a))


@dataclass(frozen=True)
class CurvatureCenters:
    """Osculating-circle centres and the four point-to-centre distances.

    The ``*_closed`` values follow from orthogonality of the frames;
    ``*_printed`` are the plain sums ``1/P + lambda`` and ``1/kappa + lambda``.
    """

    M: DualVec3
    M_star: DualVec3
    alpha_M: DualScalar
    alpha_M_star: DualScalar
    beta_M_star: DualScalar
    beta_M: DualScalar
    alpha_M_star_closed: DualScalar
    beta_M_closed: DualScalar
    alpha_M_star_printed: DualScalar
    beta_M_printed: DualScalar
    ratio_direct: DualScalar
    ratio_statement: DualScalar
    ratio_proof: Optional[DualScalar]


def curvature_centers(sample: MannheimSample, lam, orientation: int = 1,
                      offset: Optional[DualScalar] = None) -> CurvatureCenters:
    """``M = alpha + N/kappa`` and ``M* = beta + V2/P`` with distances taken
    as dual Lorentzian norms.

    ``offset`` is the signed coefficient of ``B`` in ``beta - alpha``
    (defaults to ``lam``). The direct ratio is
    ``(|beta M| / |alpha M|) / (|beta M*| / |alpha M*|)``; the two closed
    expressions ``(1 + kappa P)(1 + lambda P)`` and
    ``(1 + lambda P) sqrt(1 - lambda^2 kappa^2)`` are reported next to it,
    the latter as None where the radicand is negative.
    """
    lam = DualScalar.coerce(lam)
    offset = lam if offset is None else DualScalar.coerce(offset)
    fa, fb = sample.alpha_frame, sample.beta_frame
    kappa, P = fa.curvature, fb.curvature
    if kappa.re <= 1e-12 or P.re <= 1e-12:
        raise DegenerateJet(f"curvature too small for a curvature centre at t = {sample.t!r}")
    M = sample.alpha + fa.N / kappa
    Ms = sample.beta + fb.V2 / P
    aM, aMs = norm(M - sample.alpha), norm(Ms - sample.alpha)
    bMs, bM = norm(Ms - sample.beta), norm(M - sample.beta)
    direct = (bM / aM) / (bMs / aMs)
    statement = (1.0 + kappa * P) * (1.0 + lam * P)
    under = 1.0 - lam * lam * kappa * kappa
    proof = (1.0 + lam * P) * under.sqrt() if under.re > 0 else None
    return CurvatureCenters(
        M, Ms, aM, aMs, bMs, bM,
        abs(offset + float(orientation) / P), (offset * offset + 1.0 / (kappa * kappa)).sqrt(),
        1.0 / P + lam, 1.0 / kappa + lam,
        direct, statement, proof)


def _fd_weights(i: int, n: int) -> tuple[int, np.ndarray]:
    """Five-point first-derivative stencil as (start index, weights * 12h)."""
    if 2 <= i <= n - 3:
        return i - 2, np.array([1.0, -8.0, 0.0, 8.0, -1.0])
    if i == 0:
        return 0, np.array([-25.0, 48.0, -36.0, 16.0, -3.0])
    if i == 1:
        return 0, np.array([-3.0, -10.0, 18.0, -6.0, 1.0])
    if i == n - 2:
        return n - 5, np.array([-1.0, 6.0, -18.0, 10.0, 3.0])
    return n - 5, np.array([3.0, -16.0, 36.0, -48.0, 25.0])


def _vec_residual(v: DualVec3) -> DualScalar:
    """Largest component magnitude of a dual vector, real and dual parts."""
    return DualScalar(float(np.max(np.abs(v.real()))), float(np.max(np.abs(v.dual()))))


def _sgn(x: float) -> int:
    return 1 if x > 0 else (-1 if x < 0 else 0)


# residual columns, in report order
RESIDUALS = (
    "collinearity",          # B ∧ V2, largest component
    "distance",              # ||beta - alpha|| - |lambda|
    "torsion_relation",      # tau + P/(lambda Q)
    "speed_ratio_sinh",      # ds*/ds - 1/sinh(Phi)
    "lambda_tau_cosh",       # -lambda tau - cosh(Phi) ds*/ds
    "sinh_phi",              # sinh(Phi) + (1 + lambda P) ds*/ds
    "cosh_phi",              # cosh(Phi) + lambda Q ds*/ds
    "sinh2_phi",             # sinh^2(Phi) + (1 + lambda P)
    "cosh2_phi",             # cosh^2(Phi) - lambda^2 tau Q
    "torsion_split_real",    # k2 + p/(c1 q)
    "torsion_split_dual",    # k2* - dual part of -P/(lambda Q)
    "torsion_split_dual_real_lambda",  # k2* - (p q* - p* q)/(c1 q^2)
    "mu_relation",           # mu Q - lambda P - 1
    "curvature_torsion",     # P^2 - Q^2 - tau^2 (ds/ds*)^2
    "mannheim_condition",    # lambda (Q^2 - P^2) - P
    "condition_split_real",  # p - c1 (q^2 - p^2)
    "condition_split_dual",  # p* - 2 c1 (q q* - p p*) - c2 (q^2 - p^2)
    "condition_split_dual_real_lambda",  # p* - 2 c1 (q q* - p p*)
    "kappa_from_phi",        # kappa + dPhi/ds
    "tau_from_partner",      # tau - (P cosh - Q sinh) ds*/ds
    "P_from_tau",            # P - tau cosh(Phi) ds/ds*
    "Q_from_tau",            # Q - tau sinh(Phi) ds/ds*
    "frame_v1",              # V1 - (sinh T + cosh N)
    "frame_v2",              # V2 - o B
    "frame_v3",              # V3 - (cosh T + sinh N)
    "torsion_product",       # tau Q + P/lambda
)

# identities expected to vanish on a genuine pair (real parts)
GENUINE = tuple(r for r in RESIDUALS if r not in (
    "torsion_split_dual_real_lambda", "condition_split_dual_real_lambda", "kappa_from_phi"))


@dataclass
class PairReport:
    lam: DualScalar
    orientation_sign: int
    grid: Grid
    rows: list[dict] = field(default_factory=list)
    distance_stddev: DualScalar = DualScalar(0.0, 0.0)

    def column(self, name: str) -> list:
        return [r[name] for r in self.rows]

    def max_abs(self, name: str) -> DualScalar:
        """Largest |real| and |dual| part over the grid; NaN if never defined."""
        vals = [v for v in self.column(name) if v is not None]
        if not vals:
            return DualScalar(math.nan, math.nan)
        return DualScalar(max(abs(v.re) for v in vals), max(abs(v.du) for v in vals))

    def summary(self) -> dict[str, DualScalar]:
        return {name: self.max_abs(name) for name in RESIDUALS}

    @property
    def signs(self) -> list[int]:
        return self.column("sign_check")


def verify_pair(pair: MannheimPair, grid: Grid) -> PairReport:
    """Evaluate every curvature/torsion identity of the pair on ``grid``.

    Residuals are ``lhs - rhs`` as dual numbers, ``None`` where a quantity
    is undefined (no real angle). The sign ``o`` with ``V2 = o B`` is fixed
    at the first grid point; a later flip raises :class:`OrientationFlip`.
    """
    lam = pair.lam
    c1, c2 = lam.re, lam.du
    samples = [sample_pair(pair, t) for t in grid.points()]

    sign = pair.orientation_sign or _sgn(inner(samples[0].alpha_frame.B, samples[0].beta_frame.V2).re)
    if sign == 0:
        raise OrientationFlip(f"B and V2 are orthogonal at t = {samples[0].t!r}")
    for s in samples:
        if _sgn(inner(s.alpha_frame.B, s.beta_frame.V2).re) != sign:
            raise OrientationFlip(f"<B, V2> changes sign at t = {s.t!r}")
    offset = pair.offset_along_b(sign)

    # dPhi/ds along alpha with a 5-point stencil over the grid
    h = grid.step
    phis = [s.phi.value if s.phi is not None else None for s in samples]
    dphi_ds: list[Optional[DualScalar]] = []
    for i, s in enumerate(samples):
        start, w = _fd_weights(i, len(samples))
        window = phis[start:start + 5]
        if any(p is None for p in window):
            dphi_ds.append(None)
            continue
        d = DualScalar(float(np.dot(w, [p.re for p in window])), float(np.dot(w, [p.du for p in window])))
        dphi_ds.append(d / (12.0 * h) / s.alpha_frame.speed)

    report = PairReport(lam, sign, grid)
    for s, dphi in zip(samples, dphi_ds):
        fa, fb = s.alpha_frame, s.beta_frame
        kappa, tau, P, Q = fa.curvature, fa.torsion, fb.curvature, fb.torsion
        sigma = s.speed_ratio
        p, ps, q, qs = P.re, P.du, Q.re, Q.du
        row: dict = {"t": s.t, "kappa": kappa, "tau": tau, "P": P, "Q": Q, "speed_ratio": sigma,
                     "distance_value": s.distance, "phi": None, "mu": None}
        row.update(dict.fromkeys(RESIDUALS))
        row["collinearity"] = _vec_residual(cross(fa.B, fb.V2))
        row["distance"] = s.distance - abs(lam)
        row["torsion_relation"] = tau + P / (lam * Q)
        row["torsion_split_real"] = DualScalar(tau.re + p / (c1 * q))
        row["torsion_split_dual"] = DualScalar(tau.du + (P / (lam * Q)).du)
        row["torsion_split_dual_real_lambda"] = DualScalar(tau.du - (p * qs - ps * q) / (c1 * q * q))
        row["curvature_torsion"] = P * P - Q * Q - tau * tau / (sigma * sigma)
        row["mannheim_condition"] = lam * (Q * Q - P * P) - P
        row["condition_split_real"] = DualScalar(p - c1 * (q * q - p * p))
        row["condition_split_dual"] = DualScalar(ps - 2 * c1 * (q * qs - p * ps) - c2 * (q * q - p * p))
        row["condition_split_dual_real_lambda"] = DualScalar(ps - 2 * c1 * (q * qs - p * ps))
        row["torsion_product"] = tau * Q + P / lam
        row["tau_q"] = tau * Q
        row["sign_check"] = _sgn(tau.re) * _sgn(Q.re)
        if s.phi is not None:
            phi = s.phi.value
            sh, ch = dn.sinh(phi), dn.cosh(phi)
            mu = lam * dn.tanh(phi)
            row.update(phi=phi, mu=mu)
            row["speed_ratio_sinh"] = sigma - 1.0 / sh if sh.re != 0.0 else None
            row["lambda_tau_cosh"] = -lam * tau - ch * sigma
            row["sinh_phi"] = sh + (1.0 + lam * P) * sigma
            row["cosh_phi"] = ch + lam * Q * sigma
            row["sinh2_phi"] = sh * sh + (1.0 + lam * P)
            row["cosh2_phi"] = ch * ch - lam * lam * tau * Q
            row["mu_relation"] = mu * Q - lam * P - 1.0
            if dphi is not None:
                row["kappa_from_phi"] = kappa + dphi
            row["tau_from_partner"] = tau - (P * ch - Q * sh) * sigma
            row["P_from_tau"] = P - tau * ch / sigma
            row["Q_from_tau"] = Q - tau * sh / sigma
            row["frame_v1"] = _vec_residual(fb.V1 - (fa.T * sh + fa.N * ch))
            row["frame_v3"] = _vec_residual(fb.V3 - (fa.T * ch + fa.N * sh))
        row["frame_v2"] = _vec_residual(fb.V2 - fa.B * float(sign))
        try:
            row["centers"] = curvature_centers(s, lam, sign, offset)
        except (NumericalDegeneracy, DomainError):
            row["centers"] = None
        report.rows.append(row)

    d = np.array([[s.distance.re, s.distance.du] for s in samples])
    report.distance_stddev = DualScalar(float(np.std(d[:, 0])), float(np.std(d[:, 1])))
    return report
