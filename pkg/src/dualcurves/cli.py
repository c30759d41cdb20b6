"""Command-line front end.

    dualcurves frenet  --config job.json [--out report.json] [--format json|csv]
    dualcurves offset  --config job.json
    dualcurves partner --config job.json [--solve-lambda]
    dualcurves check   --config job.json [--solve-lambda]

Exit status: 0 on success, 1 for invalid input, 2 when the geometry
degenerates at some sample (the message names the parameter).
"""
from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import sys
from typing import Any

from .curve import (Curve, DualExpr, ExprCurve, FrameKind, NaturalCurve, dual_arc_length,
                    frenet, screw_dual_part)
from .dual import DualScalar
from .errors import ConfigError, NumericalDegeneracy, ValidationError
from . import expr as ex
from .lorentz import DualAngle, DualVec3, causal_character, norm
from .mannheim import (RESIDUALS, Grid, MannheimPair, MannheimTorsion, offset_from_timelike,
                       partner_from_spacelike, solve_lambda, verify_pair)

EXIT_OK, EXIT_INVALID, EXIT_DEGENERATE = 0, 1, 2
FORMATS = ("json", "csv")


# --------------------------------------------------------------------------
# config


def _number(value, what: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{what} must be a number, got {value!r}")
    x = float(value)
    if not math.isfinite(x):
        raise ConfigError(f"{what} must be finite, got {value!r}")
    return x


def _dual_number(value, what: str) -> DualScalar:
    if isinstance(value, dict):
        unknown = set(value) - {"re", "du"}
        if unknown or "re" not in value:
            raise ConfigError(f"{what} needs keys 're' and optional 'du', got {sorted(value)}")
        return DualScalar(_number(value["re"], f"{what}.re"), _number(value.get("du", 0.0), f"{what}.du"))
    return DualScalar(_number(value, what))


def _expr(value, what: str) -> ex.Expr:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return ex.Const(float(value))
    if not isinstance(value, str):
        raise ConfigError(f"{what} must be an expression string, got {value!r}")
    return ex.parse(value)


def _triple(value, what: str) -> list:
    if not isinstance(value, list) or len(value) != 3:
        raise ConfigError(f"{what} must be a list of three entries")
    return value


def parse_curve(block: Any, what: str, lam: DualScalar | None = None) -> Curve:
    """Curve from a config block.

    ``{"real": [x, y, z], "dual": [x*, y*, z*]}`` with expression strings,
    where ``dual`` may instead be ``{"screw_axis": [w1, w2, w3]}`` (dual
    part ``w ∧ real``); or ``{"natural": {"curvature": ..., "torsion": ...,
    "kind": ...}}`` with dual scalar functions ``{"re": expr, "du": expr}``
    and torsion ``"mannheim"`` for ``sqrt(P^2 + P/lambda)``.
    """
    if not isinstance(block, dict):
        raise ConfigError(f"{what} must be an object")
    if "natural" in block:
        nat = block["natural"]
        if not isinstance(nat, dict) or "curvature" not in nat or "torsion" not in nat:
            raise ConfigError(f"{what}.natural needs 'curvature' and 'torsion'")
        curvature = _scalar_function(nat["curvature"], f"{what}.natural.curvature")
        if nat["torsion"] == "mannheim":
            if lam is None:
                raise ConfigError(f"{what}.natural.torsion = 'mannheim' needs an explicit lambda")
            torsion = MannheimTorsion(curvature, lam)
        else:
            torsion = _scalar_function(nat["torsion"], f"{what}.natural.torsion")
        kind = _kind(nat.get("kind", "spacelike"), f"{what}.natural.kind")
        t_ref = _number(nat.get("t_ref", 0.0), f"{what}.natural.t_ref")
        return NaturalCurve(curvature, torsion, kind, t_ref=t_ref)
    if "real" not in block:
        raise ConfigError(f"{what} needs 'real' (three expressions) or 'natural'")
    real = [_expr(e, f"{what}.real[{i}]") for i, e in enumerate(_triple(block["real"], f"{what}.real"))]
    dual_spec = block.get("dual", [0.0, 0.0, 0.0])
    if isinstance(dual_spec, dict):
        if set(dual_spec) != {"screw_axis"}:
            raise ConfigError(f"{what}.dual as an object takes only 'screw_axis'")
        axis = [_number(w, f"{what}.dual.screw_axis") for w in _triple(dual_spec["screw_axis"], f"{what}.dual.screw_axis")]
        dual = screw_dual_part(real, axis)
    else:
        dual = [_expr(e, f"{what}.dual[{i}]") for i, e in enumerate(_triple(dual_spec, f"{what}.dual"))]
    return ExprCurve(real, dual)


def _scalar_function(value, what: str) -> DualExpr:
    if isinstance(value, dict):
        if "re" not in value or set(value) - {"re", "du"}:
            raise ConfigError(f"{what} needs keys 're' and optional 'du'")
        return DualExpr(_expr(value["re"], f"{what}.re"), _expr(value.get("du", 0.0), f"{what}.du"))
    return DualExpr(_expr(value, what))


def _kind(value, what: str) -> FrameKind:
    try:
        return FrameKind.parse(value)
    except (ValueError, KeyError):
        raise ConfigError(f"{what} must be 'timelike' or 'spacelike', got {value!r}") from None


def _grid(config: dict, min_points: int) -> Grid:
    g = config.get("grid")
    if not isinstance(g, dict) or set(g) != {"t0", "t1", "n"}:
        raise ConfigError("grid must be an object with keys t0, t1, n")
    n = g["n"]
    if isinstance(n, bool) or not isinstance(n, int):
        raise ConfigError(f"grid.n must be an integer, got {n!r}")
    return Grid(_number(g["t0"], "grid.t0"), _number(g["t1"], "grid.t1"), n, min_points=min_points)


def load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            config = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path!r} is not valid JSON: {exc}") from None
    if not isinstance(config, dict):
        raise ConfigError("config must be a JSON object")
    return config


def _lambda(config: dict, required: bool = True) -> DualScalar | None:
    if "lambda" in config:
        return _dual_number(config["lambda"], "lambda")
    if required:
        raise ConfigError("lambda is missing (give it, or pass --solve-lambda)")
    return None


# --------------------------------------------------------------------------
# serialization


def plain(obj):
    """JSON-ready structure: dual numbers as {re, du}, vectors as {re: [..], du: [..]}."""
    if obj is None or isinstance(obj, (bool, str, int)):
        return obj
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, DualScalar):
        return {"re": plain(obj.re), "du": plain(obj.du)}
    if isinstance(obj, DualVec3):
        return {"re": [plain(float(x)) for x in obj.real()], "du": [plain(float(x)) for x in obj.dual()]}
    if isinstance(obj, DualAngle):
        return {"kind": obj.kind.value, "value": plain(obj.value)}
    if isinstance(obj, Grid):
        return {"t0": obj.t0, "t1": obj.t1, "n": obj.n}
    if dataclasses.is_dataclass(obj):
        return {f.name: plain(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    if hasattr(obj, "item"):
        return plain(obj.item())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _flatten(prefix: str, value, out: dict) -> None:
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}_{k}" if prefix else k, v, out)
    elif isinstance(value, list):
        for i, v in zip("xyz" if len(value) == 3 else range(len(value)), value):
            _flatten(f"{prefix}_{i}", v, out)
    else:
        out[prefix] = value


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def _csv_table(rows: list[dict]) -> str:
    flat = []
    for r in rows:
        d: dict = {}
        _flatten("", r, d)
        flat.append(d)
    header: list[str] = []
    for d in flat:
        header.extend(k for k in d if k not in header)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for d in flat:
        w.writerow([_fmt(d.get(k)) for k in header])
    return buf.getvalue()


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=1, sort_keys=False, allow_nan=False) + "\n"
    text = _csv_table(report["rows"])
    if "summary" in report:
        text += "\n" + _csv_table([{"identity": k, **v} for k, v in report["summary"].items()])
    return text


# --------------------------------------------------------------------------
# commands


def cmd_frenet(config: dict, args) -> dict:
    curve = parse_curve(config.get("curve"), "curve")
    kind = _kind(config.get("kind", "timelike"), "kind")
    grid = _grid(config, 1)
    rows = []
    s = DualScalar(0.0)
    prev = grid.t0
    for t in grid.points():
        s = s + dual_arc_length(curve, prev, t)
        prev = t
        f = frenet(curve, t, kind)
        rows.append({"t": t, "arc_length": s, "T": f.T, "N": f.N, "B": f.B,
                     "curvature": f.curvature, "torsion": f.torsion})
    return {"command": "frenet", "kind": kind.value, "grid": grid, "rows": rows}


def _offset_rows(base: Curve, other: Curve, grid: Grid) -> list[dict]:
    rows = []
    for t in grid.points():
        jet = other.jet(t, 1)
        rows.append({"t": t, "position": jet.position, "velocity": jet.d1,
                     "causal_character": causal_character(jet.d1.head()).value,
                     "distance": norm(jet.position - base(t))})
    return rows


def cmd_offset(config: dict, args) -> dict:
    alpha = parse_curve(config.get("curve"), "curve")
    grid = _grid(config, 1)
    lam = _lambda(config)
    beta = offset_from_timelike(alpha, lam, grid.t0)
    return {"command": "offset", "lambda": lam, "grid": grid, "rows": _offset_rows(alpha, beta, grid)}


def _beta_and_lambda(config: dict, args, grid: Grid) -> tuple[Curve, DualScalar]:
    lam = _lambda(config, required=not args.solve_lambda)
    beta = parse_curve(config.get("beta"), "beta", lam)
    if lam is None:
        lam = solve_lambda(beta, grid.t0)
    return beta, lam


def cmd_partner(config: dict, args) -> dict:
    grid = _grid(config, 1)
    beta, lam = _beta_and_lambda(config, args, grid)
    alpha = partner_from_spacelike(beta, lam, grid.t0)
    return {"command": "partner", "lambda": lam, "grid": grid, "rows": _offset_rows(beta, alpha, grid)}


def cmd_check(config: dict, args) -> dict:
    grid = _grid(config, 7)
    if ("alpha" in config) == ("beta" in config):
        raise ConfigError("check needs exactly one of 'alpha' (timelike) or 'beta' (spacelike)")
    if "alpha" in config:
        lam = _lambda(config)
        pair = MannheimPair.from_timelike(parse_curve(config["alpha"], "alpha"), lam, grid.t0)
    else:
        beta, lam = _beta_and_lambda(config, args, grid)
        pair = MannheimPair.from_spacelike(beta, lam, grid.t0)
    tolerances = config.get("tolerances", {})
    if not isinstance(tolerances, dict):
        raise ConfigError("tolerances must be an object")
    coll_tol = _number(tolerances.get("collinearity", 1e-8), "tolerances.collinearity")
    report = verify_pair(pair, grid)
    summary = report.summary()
    return {
        "command": "check",
        "lambda": lam,
        "built_from": pair.built_from.value,
        "orientation_sign": report.orientation_sign,
        "grid": grid,
        "collinearity_tolerance": coll_tol,
        "collinear": bool(summary["collinearity"].re <= coll_tol),
        "distance_stddev": report.distance_stddev,
        "sign_check": sorted(set(report.signs)),
        "summary": {k: summary[k] for k in RESIDUALS},
        "rows": report.rows,
    }


COMMANDS = {"frenet": cmd_frenet, "offset": cmd_offset, "partner": cmd_partner, "check": cmd_check}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dualcurves", description="Dual Lorentzian curve frames and Mannheim pair checks.")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--config", required=True, help="JSON job file")
    parser.add_argument("--out", help="write the report here instead of stdout")
    parser.add_argument("--format", choices=FORMATS, help="report format (default: config 'format' or json)")
    parser.add_argument("--solve-lambda", action="store_true", help="derive lambda from the curvature and torsion of beta at t0")
    return parser


def run(argv=None) -> tuple[int, str]:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
        fmt = args.format or config.get("format", "json")
        if fmt not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}, got {fmt!r}")
        text = render(plain(COMMANDS[args.command](config, args)), fmt)
    except ValidationError as exc:
        return EXIT_INVALID, f"error: {type(exc).__name__}: {exc}"
    except NumericalDegeneracy as exc:
        return EXIT_DEGENERATE, f"error: {type(exc).__name__}: {exc}"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        return EXIT_OK, ""
    return EXIT_OK, text


def main(argv=None) -> int:
    code, text = run(argv)
    if code == EXIT_OK:
        sys.stdout.write(text)
    else:
        print(text, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
