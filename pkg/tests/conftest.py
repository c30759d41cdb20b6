import json
import pathlib

import pytest

from dualcurves import DualScalar

DATA = pathlib.Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def oracles():
    return json.loads((DATA / "oracles.json").read_text())


def close(a, b, tol=1e-12):
    a, b = DualScalar.coerce(a), DualScalar.coerce(b)
    return abs(a.re - b.re) <= tol * max(1.0, abs(b.re)) and abs(a.du - b.du) <= tol * max(1.0, abs(b.du))


# acceptance lines, printed after the run
ACCEPTANCE: list[str] = []


def report_line(name: str, ok: bool, detail: str) -> bool:
    ACCEPTANCE.append(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)


def _fd5(f, t, h):
    return (f(t - 2 * h) - 8 * f(t - h) + 8 * f(t + h) - f(t + 2 * h)) / (12 * h)


def frame_law_residual(curve, kind, t, h=1e-3):
    """Largest component of (d/ds frame) - (frame law right-hand side), with
    the arc-length derivative taken by 5-point differences in t."""
    from dualcurves.curve import FrameKind, frenet
    from dualcurves.lorentz import DualVec3

    f = frenet(curve, t, kind)
    k, w = f.curvature, f.torsion
    cache = {s: frenet(curve, s, kind).vectors() for s in (t - 2 * h, t - h, t + h, t + 2 * h)}
    derivs = []
    for i in range(3):
        re = _fd5(lambda s: cache[s][i].real(), t, h)
        du = _fd5(lambda s: cache[s][i].dual(), t, h)
        derivs.append(DualVec3.from_parts(re, du) / f.speed)
    T, N, B = f.vectors()
    if kind is FrameKind.TIMELIKE_TNB:
        rhs = (N * k, T * k + B * w, N * (-w))
    else:
        rhs = (N * k, T * (-k) + B * w, N * w)
    return max((a - b).max_abs() for a, b in zip(derivs, rhs))
