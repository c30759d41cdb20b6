"""Regenerate tests/data/oracles.json.

Every value here is computed without the package: sympy for closed forms
(with its own small dual-number class) and mpmath for the natural-curve
integration. Run from the repository root:

    python3 tests/oracles/generate.py
"""
import json
import pathlib

import mpmath as mp
import sympy as sp

OUT = pathlib.Path(__file__).resolve().parents[1] / "data" / "oracles.json"
t = sp.Symbol("t", real=True)


class SD:
    """Dual number over sympy expressions."""

    def __init__(self, re, du=0):
        self.re, self.du = sp.sympify(re), sp.sympify(du)

    def __add__(self, o):
        o = o if isinstance(o, SD) else SD(o)
        return SD(self.re + o.re, self.du + o.du)

    __radd__ = __add__

    def __neg__(self):
        return SD(-self.re, -self.du)

    def __sub__(self, o):
        return self + (-(o if isinstance(o, SD) else SD(o)))

    def __mul__(self, o):
        o = o if isinstance(o, SD) else SD(o)
        return SD(self.re * o.re, self.re * o.du + self.du * o.re)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = o if isinstance(o, SD) else SD(o)
        return SD(self.re / o.re, (self.du * o.re - self.re * o.du) / o.re**2)

    def sqrt(self):
        r = sp.sqrt(self.re)
        return SD(r, self.du / (2 * r))

    def absval(self):
        s = sp.sign(self.re)
        return SD(s * self.re, s * self.du)

    def diff(self):
        return SD(sp.diff(self.re, t), sp.diff(self.du, t))

    def at(self, v):
        return SD(self.re.subs(t, v), self.du.subs(t, v))

    def num(self, digits=30):
        return [float(sp.N(self.re, digits)), float(sp.N(self.du, digits))]


def inner(a, b):
    return -(a[0] * b[0]) + a[1] * b[1] + a[2] * b[2]


def cross(a, b):
    # <a∧b, c> = det(a, b, c) in signature (-,+,+)
    return [a[2] * b[1] - a[1] * b[2], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]


def norm(a):
    return inner(a, a).absval().sqrt()


def frenet_closed(curve, at):
    d1 = [c.diff() for c in curve]
    d2 = [c.diff() for c in d1]
    d3 = [c.diff() for c in d2]
    d1, d2, d3 = ([c.at(at) for c in v] for v in (d1, d2, d3))
    cr = cross(d1, d2)
    crn = norm(cr)
    speed = norm(d1)
    return crn / (speed * speed * speed), inner(cr, d3) / (crn * crn)


def helix_values():
    helix = [SD(2 * t), SD(sp.cos(t)), SD(sp.sin(t))]
    out = []
    for v in [sp.Rational(k, 3) for k in range(-4, 6)]:
        k, w = frenet_closed(helix, v)
        out.append({"t": float(v), "curvature": k.num(), "torsion": w.num()})
    return out


def spacelike_helix_values(a, b, axis):
    real = [a * sp.sinh(t), a * sp.cosh(t), b * t]
    w = axis
    dual = [w[2] * real[1] - w[1] * real[2], w[2] * real[0] - w[0] * real[2], w[0] * real[1] - w[1] * real[0]]
    beta = [SD(r, d) for r, d in zip(real, dual)]
    k, q = frenet_closed(beta, sp.Integer(0))
    P, Q = sp.nsimplify(k.re), sp.nsimplify(q.re)
    lam = SD(P, k.du) / (SD(Q, q.du) * SD(Q, q.du) - SD(P, k.du) * SD(P, k.du))
    return {"a": a, "b": b, "axis": [float(x) for x in axis],
            "P": k.num(), "Q": q.num(), "lambda": lam.num()}


def arc_length_helix():
    d = [sp.Integer(2), -sp.sin(t), sp.cos(t)]
    speed = sp.sqrt(sp.Abs(-d[0] ** 2 + d[1] ** 2 + d[2] ** 2))
    return float(sp.integrate(sp.simplify(speed), (t, 0, 1)))


def natural_pair_values(lam_re, lam_du, t_end, digits=30):
    """Integrate the spacelike Frenet law at high precision and build the
    timelike partner ``alpha = beta - lambda V2`` with its jet from the same
    law, then evaluate curvature and torsion of ``alpha`` with dual algebra."""
    mp.mp.dps = digits

    def P(s):
        return (2 + mp.e ** (-s), mp.mpf("0.1") * mp.cos(s))

    def dP(s):
        return (-mp.e ** (-s), -mp.mpf("0.1") * mp.sin(s))

    lam = (mp.mpf(lam_re), mp.mpf(lam_du))

    def dmul(a, b):
        return (a[0] * b[0], a[0] * b[1] + a[1] * b[0])

    def ddiv(a, b):
        return (a[0] / b[0], (a[1] * b[0] - a[0] * b[1]) / b[0] ** 2)

    def dsqrt(a):
        r = mp.sqrt(a[0])
        return (r, a[1] / (2 * r))

    def dadd(a, b):
        return (a[0] + b[0], a[1] + b[1])

    def Q(s):
        p = P(s)
        return dsqrt(dadd(dmul(p, p), ddiv(p, lam)))

    def rhs(s, y):
        p, q = P(s), Q(s)
        # y: position (re 3, du 3), V1, V2, V3 (re 3, du 3 each)
        vec = lambda i: ([y[i + k] for k in range(3)], [y[i + 3 + k] for k in range(3)])
        V1, V2, V3 = vec(6), vec(12), vec(18)

        def comb(terms):
            re = [sum(c[0] * v[0][k] for c, v in terms) for k in range(3)]
            du = [sum(c[0] * v[1][k] + c[1] * v[0][k] for c, v in terms) for k in range(3)]
            return re + du

        neg = lambda c: (-c[0], -c[1])
        return (V1[0] + V1[1] + comb([(p, V2)]) + comb([(neg(p), V1), (q, V3)]) + comb([(q, V2)]))

    y0 = [0] * 6 + [0, 1, 0, 0, 0, 0] + [0, 0, 1, 0, 0, 0] + [1, 0, 0, 0, 0, 0]
    f = mp.odefun(rhs, 0, [mp.mpf(v) for v in y0])
    y = f(mp.mpf(t_end))
    frame = [[float(y[i + k]) for k in range(6)] for i in (6, 12, 18)]
    position = [float(v) for v in y[0:6]]

    # alpha jet at t_end from the frame law (exact, no differencing)
    p, q, dp = P(t_end), Q(t_end), dP(t_end)
    vec = lambda i: [(y[i + k], y[i + 3 + k]) for k in range(3)]
    V1, V2, V3 = vec(6), vec(12), vec(18)

    def lin(terms):
        return [(sum(dmul(c, v[k])[0] for c, v in terms), sum(dmul(c, v[k])[1] for c, v in terms))
                for k in range(3)]

    one = (mp.mpf(1), mp.mpf(0))
    nl = (-lam[0], -lam[1])
    # alpha' = (1 + lam P) V1 - lam Q V3
    a1c, a3c = dadd(one, dmul(lam, p)), dmul(nl, q)
    d1 = lin([(a1c, V1), (a3c, V3)])
    # derivative of Q from Q^2 = P^2 + P/lam
    dq = ddiv(dadd(dmul(dmul((2, 0), p), dp), ddiv(dp, lam)), dmul((2, 0), q))
    # alpha'' = (lam P') V1 + (1 + lam P) P V2 - lam Q' V3 - lam Q Q V2
    c1 = dmul(lam, dp)
    c2 = dadd(dmul(a1c, p), dmul(a3c, q))
    c3 = dmul(nl, dq)
    d2 = lin([(c1, V1), (c2, V2), (c3, V3)])

    def dinner(a, b):
        r = [dmul(a[k], b[k]) for k in range(3)]
        return (-r[0][0] + r[1][0] + r[2][0], -r[0][1] + r[1][1] + r[2][1])

    def dcross(a, b):
        def sub(x, z):
            return (x[0] - z[0], x[1] - z[1])
        return [sub(dmul(a[2], b[1]), dmul(a[1], b[2])), sub(dmul(a[2], b[0]), dmul(a[0], b[2])),
                sub(dmul(a[0], b[1]), dmul(a[1], b[0]))]

    def dnorm(a):
        s = dinner(a, a)
        s = s if s[0] > 0 else (-s[0], -s[1])
        return dsqrt(s)

    cr = dcross(d1, d2)
    sp_ = dnorm(d1)
    kappa = ddiv(dnorm(cr), dmul(dmul(sp_, sp_), sp_))
    return {"t": t_end, "lambda": [lam_re, lam_du], "beta_position": position, "frame": frame,
            "alpha_curvature": [float(kappa[0]), float(kappa[1])],
            "P": [float(p[0]), float(p[1])], "Q": [float(q[0]), float(q[1])]}


def main():
    data = {
        "sqrt_4_4": SD(4, 4).sqrt().num(),
        "norm_034": norm([SD(0), SD(3, 3), SD(4)]).num(),
        "helix_frames": helix_values(),
        "helix_arc_length_0_1": arc_length_helix(),
        "spacelike_helix": spacelike_helix_values(1, 2, [sp.Rational(3, 10), sp.Rational(1, 10), sp.Rational(1, 5)]),
        "angle_mixed_0_3": float(sp.asinh(sp.sinh(sp.Rational(3, 10)))),
        "natural_pair": [natural_pair_values("-1.0", "0.3", x) for x in (0.5, 1.0)],
    }
    OUT.write_text(json.dumps(data, indent=1) + "\n")


if __name__ == "__main__":
    main()
