import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest

from dualcurves.curve import (DualExpr, ExprCurve, FrameKind, NaturalCurve, OffsetCurve,
                              dual_arc_length, frenet, frenet_unit_speed, screw_dual_part)
from dualcurves import expr as ex
from dualcurves.dual import DualScalar, ONE
from dualcurves.errors import CausalMismatch, DegenerateJet, LightlikeVelocity, NotUnitSpeed
from dualcurves.lorentz import DualVec3, inner, norm
from dualcurves.mannheim import MannheimTorsion

from conftest import close, frame_law_residual

TL, SL = FrameKind.TIMELIKE_TNB, FrameKind.SPACELIKE_TIMELIKE_BINORMAL


def helix():
    return ExprCurve.from_strings("2*t", "cos(t)", "sin(t)")


def spacelike_helix(a=1.0, b=2.0, axis=(0.3, 0.1, 0.2)):
    real = [ex.parse(s) for s in (f"{a}*sinh(t)", f"{a}*cosh(t)", f"{b}*t")]
    return ExprCurve(real, screw_dual_part(real, axis))


def screw_helix():
    real = [ex.parse(s) for s in ("2*t", "cos(t)", "sin(t)")]
    return ExprCurve(real, screw_dual_part(real, (0.4, -0.2, 0.7)))


def test_differentiate():
    d = helix().differentiate()
    t = 0.8
    assert np.allclose(d(t).real(), [2, -math.sin(t), math.cos(t)])
    assert ExprCurve.from_strings("1", "2", "3").differentiate()(0.5).is_zero()
    d3 = d.differentiate().differentiate()
    assert np.allclose(d3(t).real(), [0, math.sin(t), -math.cos(t)])


def test_jet_examples():
    jet = helix().jet(0.0)
    assert np.array_equal(jet.position.real(), [0, 1, 0])
    assert np.array_equal(jet.d1.real(), [2, 0, 1])
    zero = ExprCurve.from_strings("0", "0", "0").jet(1.3)
    assert all(v.is_zero() for v in (zero.position, zero.d1, zero.d2, zero.d3))


@pytest.mark.parametrize("curve", [helix(), screw_helix(), spacelike_helix()])
def test_jet_matches_central_difference(curve):
    h = 1e-4
    for t in (-0.5, 0.2, 1.0):
        jet = curve.jet(t)
        approx = (curve(t + h) - curve(t - h)) / (2 * h)
        assert np.allclose(jet.d1.real(), approx.real(), atol=1e-8)
        assert np.allclose(jet.d1.dual(), approx.dual(), atol=1e-8)


def test_arc_length(oracles):
    unit = ExprCurve.from_strings("0", "cos(t)", "sin(t)")
    assert close(dual_arc_length(unit, 0, 2), DualScalar(2, 0))
    assert close(dual_arc_length(helix(), 0, 1), DualScalar(oracles["helix_arc_length_0_1"], 0))
    shifted = ExprCurve.from_strings("2*t", "cos(t)", "sin(t)", "1", "-2", "0.5")
    assert dual_arc_length(shifted, 0, 1).du == 0.0


def test_arc_length_dual_part_is_tangent_projection():
    # s* = ∫ <unit tangent, alpha*'> dt
    c = ExprCurve.from_strings("0", "cos(t)", "sin(t)", "0", "t", "0")
    assert close(dual_arc_length(c, 0, 1.5), DualScalar(1.5, math.cos(1.5) - 1.0), 1e-11)


@pytest.mark.parametrize("curve", [helix(), screw_helix(), spacelike_helix()])
def test_arc_length_additive(curve):
    a, b, c = -0.3, 0.4, 1.2
    whole = dual_arc_length(curve, a, c)
    parts = dual_arc_length(curve, a, b) + dual_arc_length(curve, b, c)
    assert abs(whole.re - parts.re) <= 1e-11 and abs(whole.du - parts.du) <= 1e-11


def test_arc_length_lightlike():
    with pytest.raises(LightlikeVelocity):
        dual_arc_length(ExprCurve.from_strings("t", "t", "0"), 0, 1)


def test_helix_curvature_torsion(oracles):
    for row in oracles["helix_frames"]:
        f = frenet(helix(), row["t"], TL)
        assert close(f.curvature, DualScalar(*row["curvature"]))
        assert close(f.torsion, DualScalar(*row["torsion"]))


def test_spacelike_helix_against_closed_form(oracles):
    o = oracles["spacelike_helix"]
    f = frenet(spacelike_helix(o["a"], o["b"], o["axis"]), 0.0, SL)
    assert close(f.curvature, DualScalar(*o["P"]))
    assert close(f.torsion, DualScalar(*o["Q"]))


def test_screw_dual_part_keeps_invariants_real():
    for t in (0.0, 0.9):
        f = frenet(screw_helix(), t, TL)
        assert close(f.curvature, DualScalar(1 / 3, 0))
        assert close(f.torsion, DualScalar(2 / 3, 0))


def test_line_is_degenerate():
    with pytest.raises(DegenerateJet):
        frenet(ExprCurve.from_strings("t", "0", "0"), 0.3, TL)


def test_kind_mismatch():
    with pytest.raises(CausalMismatch):
        frenet(helix(), 0.0, SL)
    with pytest.raises(CausalMismatch):
        frenet(spacelike_helix(), 0.0, TL)
    with pytest.raises(LightlikeVelocity):
        frenet(ExprCurve.from_strings("t", "t", "t*t"), 0.0, TL)


def _metric(f):
    vs = f.vectors()
    return [[inner(a, b) for b in vs] for a in vs]


@pytest.mark.parametrize("curve,kind,signs", [
    (helix(), TL, (-1, 1, 1)), (screw_helix(), TL, (-1, 1, 1)), (spacelike_helix(), SL, (1, 1, -1))])
def test_frame_metric_invariants(curve, kind, signs):
    for t in np.linspace(-1, 1, 11):
        g = _metric(frenet(curve, float(t), kind))
        for i in range(3):
            for j in range(3):
                want = DualScalar(signs[i] if i == j else 0.0, 0.0)
                assert abs(g[i][j].re - want.re) <= 1e-9 and abs(g[i][j].du) <= 1e-9


@pytest.mark.parametrize("curve,kind", [(helix(), TL), (screw_helix(), TL), (spacelike_helix(), SL)])
def test_frame_derivative_equations(curve, kind):
    worst = max(frame_law_residual(curve, kind, float(t)) for t in np.linspace(-1, 1, 50))
    assert worst <= 1e-7


def test_unit_speed_formulas_agree():
    r3 = math.sqrt(3)
    c = ExprCurve.from_strings(f"{2 / r3!r}*t", f"cos({1 / r3!r}*t)", f"sin({1 / r3!r}*t)")
    for t in np.linspace(-2, 2, 10):
        u = frenet_unit_speed(c, float(t), TL)
        g = frenet(c, float(t), TL)
        assert close(u.curvature, DualScalar(1 / 3, 0), 1e-12)
        assert abs(u.curvature.re - g.curvature.re) <= 1e-9 and abs(u.torsion.re - g.torsion.re) <= 1e-9
        assert abs(u.curvature.du - g.curvature.du) <= 1e-9 and abs(u.torsion.du - g.torsion.du) <= 1e-9


def test_unit_speed_spacelike_natural_curve():
    P = DualExpr("2 + exp(-t)", "0.1*cos(t)")
    beta = NaturalCurve(P, MannheimTorsion(P, DualScalar(-1.0, 0.3)))
    for t in (0.0, 0.6):
        u, g = frenet_unit_speed(beta, t, SL), frenet(beta, t, SL)
        assert close(u.curvature, g.curvature, 1e-9) and close(u.torsion, g.torsion, 1e-9)


def test_unit_speed_errors():
    with pytest.raises(NotUnitSpeed):
        frenet_unit_speed(helix(), 0.0, TL)
    with pytest.raises(DegenerateJet):
        frenet_unit_speed(ExprCurve.from_strings("t", "0", "0"), 0.0, TL)


def test_natural_curve_against_high_precision_integration(oracles):
    row = oracles["natural_pair"][0]
    lam = DualScalar(*map(float, row["lambda"]))
    P = DualExpr("2 + exp(-t)", "0.1*cos(t)")
    beta = NaturalCurve(P, MannheimTorsion(P, lam))
    for row in oracles["natural_pair"]:
        t = row["t"]
        pos = beta(t)
        assert np.allclose(np.concatenate([pos.real(), pos.dual()]), row["beta_position"], atol=1e-11)
        for got, want in zip(beta.frame(t), row["frame"]):
            assert np.allclose(np.concatenate([got.real(), got.dual()]), want, atol=1e-11)
        f = frenet(beta, t, SL)
        assert close(f.curvature, DualScalar(*row["P"]), 1e-10)
        assert close(f.torsion, DualScalar(*row["Q"]), 1e-10)
        assert close(f.speed, ONE, 1e-12)


def test_natural_curve_query_order_does_not_matter():
    P = DualExpr("2 + exp(-t)", "0.1*cos(t)")
    ts = [0.9, -0.4, 0.1, 1.7, 0.55]
    a = NaturalCurve(P, MannheimTorsion(P, DualScalar(-1.0, 0.3)))
    b = NaturalCurve(P, MannheimTorsion(P, DualScalar(-1.0, 0.3)))
    seq = [a(t).real().tolist() + a(t).dual().tolist() for t in ts]
    with ThreadPoolExecutor(4) as pool:
        par = list(pool.map(lambda t: b(t).real().tolist() + b(t).dual().tolist(), reversed(ts)))
    assert seq == list(reversed(par))


def test_timelike_natural_curve_reproduces_helix_invariants():
    c = NaturalCurve(DualExpr(1 / 3), DualExpr(2 / 3), TL)
    for t in (0.0, 0.8, -1.1):
        f = frenet(c, t, TL)
        assert close(f.curvature, DualScalar(1 / 3), 1e-10)
        assert close(f.torsion, DualScalar(2 / 3), 1e-10)


def test_offset_curve_along_binormal():
    beta = OffsetCurve(helix(), TL, 2, ONE)
    for t in (0.0, 0.5, 1.3):
        B = frenet(helix(), t, TL).B
        assert np.allclose((beta(t) - helix()(t) - B).real(), 0, atol=1e-14)
        assert close(norm(beta(t) - helix()(t)), ONE)
        h = 1e-4
        approx = (beta(t + h) - beta(t - h)) / (2 * h)
        assert np.allclose(beta.jet(t).d1.real(), approx.real(), atol=1e-8)


def test_sampling_concurrently_matches_sequential():
    c = screw_helix()
    ts = list(np.linspace(0, 2, 16))
    seq = [frenet(c, float(t), TL).torsion for t in ts]
    with ThreadPoolExecutor(4) as pool:
        par = list(pool.map(lambda t: frenet(c, float(t), TL).torsion, ts))
    assert seq == par
