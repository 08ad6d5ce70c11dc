"""feucheck: exact certification of nine-point circle tangencies from the command line.

Vertex coordinates use the exact grammar: integers, p/q, sqrt(n) and
arithmetic on them, e.g. ``-1/2`` or ``(1+sqrt(5))/4``.  With no vertex
arguments, triangles are read from stdin, one per line, and one JSON
report is written per line.

Exit status: 0 success, 1 parse error, 2 geometric precondition failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .affinemap import MapKind, classify, det_ratio, fixed_points
from .barycentric import BaryPoint, CartPoint, TriangleCtx, make_triangle, to_cartesian
from .cevian import CevianConfig, build_cevian_config, gergonne_point
from .conics import Conic, compute_metrics, excircle, incircle, ninepoint_circle, ninepoint_conic
from .errors import CentroidDegenerate, GeometryError, InfiniteFixedSet, ParseError
from .exactfield import QQ, approx, parse
from .linalg import is_rational
from .feuerbach import TARGETS, build_phi, certify, contact_point, feuerbach_point_from_sides, fixed_point_formula

SCHEMA = 1
MODES = ("certify", "centers", "map-trace", "conic")
TARGET_CHOICES = {
    "incircle": ("incircle",),
    "excircleA": ("excircle_A",),
    "excircleB": ("excircle_B",),
    "excircleC": ("excircle_C",),
    "all": tuple(TARGETS),
}
OPTION_ARITY = {"--json": 0, "--svg": 1, "--digits": 1, "--point": 3, "--target": 1, "-h": 0, "--help": 0}


@dataclass
class RunConfig:
    mode: str
    coords: list[str]
    targets: tuple[str, ...] = tuple(TARGETS)
    point: list[str] | None = None
    as_json: bool = False
    svg_path: str | None = None
    digits: int = 12


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; here 2 is reserved for geometry
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="feucheck", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("mode", choices=MODES)
    p.add_argument("coords", nargs="*", metavar="COORD", help="Ax Ay Bx By Cx Cy")
    p.add_argument("--json", action="store_true", help="emit a JSON report instead of text")
    p.add_argument("--svg", metavar="PATH", help="also write an SVG diagram")
    p.add_argument("--digits", type=int, default=12, help="decimal places in approximations (default 12)")
    p.add_argument("--point", nargs=3, metavar=("X", "Y", "Z"), help="barycentric parameter point P")
    p.add_argument("--target", choices=tuple(TARGET_CHOICES), default="all")
    return p


def _shield_negatives(argv: list[str]) -> list[str]:
    """Keep values like -1/2 or -sqrt(2) from being read as options.

    A leading space makes argparse treat the token as positional; the
    element parser ignores the whitespace.
    """
    out = []
    for tok in argv:
        known = tok in OPTION_ARITY or tok.split("=", 1)[0] in OPTION_ARITY
        if tok.startswith("-") and not known and tok != "--":
            tok = " " + tok
        out.append(tok)
    return out


def parse_args(argv: list[str]) -> RunConfig:
    ns = build_parser().parse_intermixed_args(_shield_negatives(argv))
    if ns.coords and len(ns.coords) != 6:
        raise UsageError(f"expected 6 vertex coordinates, got {len(ns.coords)}")
    if ns.digits < 1:
        raise UsageError("--digits must be at least 1")
    return RunConfig(
        mode=ns.mode,
        coords=[c.strip() for c in ns.coords],
        targets=TARGET_CHOICES[ns.target],
        point=[c.strip() for c in ns.point] if ns.point else None,
        as_json=ns.json,
        svg_path=ns.svg,
        digits=ns.digits,
    )


# -- report building -----------------------------------------------------------


class Report:
    """Turns exact objects into JSON-ready values at a fixed precision."""

    def __init__(self, tri: TriangleCtx, digits: int):
        self.tri = tri
        self.digits = digits

    def num(self, x) -> dict:
        x = self.tri(x)
        return {"exact": str(x), "approx": approx(x, self.digits)}

    def cart(self, p: CartPoint) -> dict:
        return {"x": self.num(p.u), "y": self.num(p.v)}

    def point(self, p: BaryPoint) -> dict:
        out = self.cart(to_cartesian(self.tri, p))
        out["barycentric"] = [str(c) for c in p.normalized()]
        return out

    def matrix(self, m) -> list[list[str]]:
        return [[str(v) for v in row] for row in m]

    def map_matrix(self, f) -> list[list[str]]:
        """Integer form for rational maps, otherwise the representative with unit column sums."""
        if all(is_rational(v) for row in f.m for v in row):
            return self.matrix(f.m)
        inv = f.scale.inverse()
        return [[str(v * inv) for v in row] for row in f.m]

    def conic(self, c: Conic) -> dict:
        return {"cartesian": [str(v) for v in c.cartesian()], "matrix": self.matrix(c.q)}

    def circle(self, center: BaryPoint, radius, c: Conic) -> dict:
        return {"center": self.point(center), "radius": self.num(radius), "equation": self.conic(c)}


def _load(coords: list[str], point: list[str] | None):
    texts = coords + (point or [])
    ctx, values = QQ, []
    for text in texts:
        try:
            v = parse(text, ctx)
        except ParseError as exc:
            raise ParseError(f"{exc.message} in {text!r}", exc.token, exc.position) from None
        ctx = v.ctx
        values.append(v)
    values = [ctx(v) for v in values]
    A, B, C = (CartPoint(values[i], values[i + 1]) for i in (0, 2, 4))
    tri = make_triangle(A, B, C)
    P = tri.point(*values[6:9]) if point else None
    return tri, P


def _header(rep: Report, mode: str) -> dict:
    tri = rep.tri
    return {
        "schema": SCHEMA,
        "mode": mode,
        "digits": rep.digits,
        "field": tri.tower.generators(),
        "triangle": {
            "A": rep.cart(tri.A),
            "B": rep.cart(tri.B),
            "C": rep.cart(tri.C),
            "a": rep.num(tri.a),
            "b": rep.num(tri.b),
            "c": rep.num(tri.c),
        },
    }


def certify_report(rep: Report, cert) -> dict:
    m = cert.metrics
    out = _header(rep, "certify")
    out["ninepoint"] = rep.circle(m.ninepoint_center, m.r_n, cert.ninepoint)
    circles = {}
    for name, rec in cert.records.items():
        cls = rec.classification
        circles[name] = {
            "P": [str(c) for c in rec.P.normalized()],
            "circle": rep.circle(rec.center, rec.radius, rec.circle),
            "map": {
                "kind": cls.kind.value,
                "ratio": rep.num(cls.ratio) if cls.ratio is not None else None,
                "det_ratio": rep.num(det_ratio(rec.phi)),
                "matrix": rep.map_matrix(rec.phi),
            },
            "Z": {
                "x": rep.num(rec.Z_cartesian.u),
                "y": rep.num(rec.Z_cartesian.v),
                "barycentric": [str(c) for c in rec.Z.normalized()],
            },
            "tangent_line": [str(c) for c in rec.tangency.tangent],
            "contact": rec.contact,
            "checks": {
                "Z_on_ninepoint_circle": rec.tangency.on_first,
                "Z_on_circle": rec.tangency.on_second,
                "tangent_lines_equal": rec.tangency.same_tangent,
                **rec.checks,
            },
        }
    out["circles"] = circles
    out["checks"] = dict(cert.checks)
    out["all_exact"] = cert.all_exact
    return out


def centers_report(rep: Report, targets) -> dict:
    tri = rep.tri
    m = compute_metrics(tri)
    out = _header(rep, "centers")
    out["radii"] = {
        "circumradius": rep.num(m.R),
        "inradius": rep.num(m.r_i),
        "ninepoint_radius": rep.num(m.r_n),
        "exradius_A": rep.num(m.r_A),
        "exradius_B": rep.num(m.r_B),
        "exradius_C": rep.num(m.r_C),
    }
    centers = {
        "centroid": rep.point(m.centroid),
        "incenter": rep.point(m.incenter),
        "circumcenter": rep.point(m.circumcenter),
        "orthocenter": rep.point(m.orthocenter),
        "ninepoint_center": rep.point(m.ninepoint_center),
        "gergonne": rep.point(gergonne_point(tri)),
        "excenter_A": rep.point(m.excenter_A),
        "excenter_B": rep.point(m.excenter_B),
        "excenter_C": rep.point(m.excenter_C),
    }
    for name in targets:
        key = "feuerbach" if name == "incircle" else "feuerbach_" + TARGETS[name]
        centers[key] = rep.point(feuerbach_point_from_sides(m, TARGETS[name]))
    out["centers"] = centers
    return out


def _trace(rep: Report, cfg: CevianConfig) -> dict:
    tri = rep.tri
    phi = build_phi(tri, cfg.P, cfg)
    cls = classify(phi)
    try:
        fixed = fixed_points(phi)
        fixed_out = [rep.point(p) for p in fixed]
    except InfiniteFixedSet as exc:
        fixed_out = str(exc)
    return {
        "P": [str(c) for c in cfg.P.normalized()],
        "traces": {k: rep.point(p) for k, p in zip("DEF", cfg.traces)},
        "reflections": {k + "'": rep.point(p) for k, p in zip("DEF", cfg.reflections)},
        "T1": {"matrix": rep.map_matrix(cfg.T1), "kind": classify(cfg.T1).kind.value, "det_ratio": rep.num(det_ratio(cfg.T1))},
        "T2": {"matrix": rep.map_matrix(cfg.T2), "kind": classify(cfg.T2).kind.value, "det_ratio": rep.num(det_ratio(cfg.T2))},
        "phi": {
            "matrix": rep.map_matrix(phi),
            "kind": cls.kind.value,
            "ratio": rep.num(cls.ratio) if cls.kind is MapKind.HOMOTHETY else None,
            "det_ratio": rep.num(det_ratio(phi)),
            "fixed_points": fixed_out,
        },
    }


def _parameter_points(tri: TriangleCtx, targets, P: BaryPoint | None):
    if P is not None:
        return {"point": P}
    m = compute_metrics(tri)
    return {name: contact_point(m, TARGETS[name]) for name in targets}


def map_trace_report(rep: Report, targets, P: BaryPoint | None) -> dict:
    out = _header(rep, "map-trace")
    out["maps"] = {
        name: _trace(rep, build_cevian_config(rep.tri, q)) for name, q in _parameter_points(rep.tri, targets, P).items()
    }
    return out


def conic_report(rep: Report, targets, P: BaryPoint | None) -> dict:
    tri = rep.tri
    m = compute_metrics(tri)
    out = _header(rep, "conic")
    out["ninepoint_circle"] = rep.circle(m.ninepoint_center, m.r_n, ninepoint_circle(tri, m))
    if P is None:
        out["circles"] = {
            name: rep.circle(
                m.center(TARGETS[name]),
                m.radius(TARGETS[name]),
                incircle(tri, m) if TARGETS[name] is None else excircle(tri, TARGETS[name], m),
            )
            for name in targets
        }
    conics = {}
    for name, q in _parameter_points(tri, targets, P).items():
        cfg = build_cevian_config(tri, q)
        E = ninepoint_conic(tri, q)
        try:
            Z = fixed_point_formula(q, cfg)
        except CentroidDegenerate:
            Z = None
        conics[name] = {
            "P": [str(c) for c in q.normalized()],
            "equation": rep.conic(E),
            "Z": rep.point(Z) if Z is not None else None,
            "Z_on_conic": E.contains(Z) if Z is not None else None,
        }
    out["ninepoint_conics"] = conics
    return out


def run(cfg: RunConfig) -> dict:
    """Compute the report for one triangle; geometry and parse errors propagate."""
    tri, P = _load(cfg.coords, cfg.point)
    rep = Report(tri, cfg.digits)
    cert = None
    if cfg.mode == "certify":
        cert = certify(tri, cfg.targets)
        report = certify_report(rep, cert)
    elif cfg.mode == "centers":
        report = centers_report(rep, cfg.targets)
    elif cfg.mode == "map-trace":
        report = map_trace_report(rep, cfg.targets, P)
    else:
        report = conic_report(rep, cfg.targets, P)
    if cfg.svg_path:
        from .diagram import emit_svg

        if cert is None or set(cert.records) != set(TARGETS):
            cert = certify(tri)
        emit_svg(cert, cfg.svg_path)
    return report


# -- output --------------------------------------------------------------------


def to_json(report: dict, indent: int | None = 2) -> str:
    return json.dumps(report, indent=indent, ensure_ascii=True)


def to_text(report: dict) -> str:
    lines: list[str] = []

    def walk(value, prefix: str, depth: int) -> None:
        pad = "  " * depth
        if isinstance(value, dict) and set(value) == {"exact", "approx"}:
            lines.append(f"{pad}{prefix}{value['exact']}  ~ {value['approx']}")
        elif isinstance(value, dict):
            if prefix:
                lines.append(f"{pad}{prefix.rstrip(': ')}:")
                depth += 1
            for k, v in value.items():
                walk(v, f"{k}: ", depth)
        elif isinstance(value, list) and value and isinstance(value[0], list):
            lines.append(f"{pad}{prefix.rstrip(': ')}:")
            for row in value:
                lines.append(f"{pad}  [{', '.join(row)}]")
        elif isinstance(value, list):
            lines.append(f"{pad}{prefix}({', '.join(str(v) for v in value)})")
        else:
            lines.append(f"{pad}{prefix}{json.dumps(value) if not isinstance(value, str) else value}")

    walk(report, "", 0)
    return "\n".join(lines) + "\n"


def _error_message(exc: Exception) -> str:
    if isinstance(exc, ParseError):
        return f"parse error: {exc.message} (token {exc.token!r}, position {exc.position})"
    return str(exc)


def _exit_code(exc: Exception) -> int:
    return 1 if isinstance(exc, (ParseError, UsageError)) else 2


def run_batch(cfg: RunConfig, stream, out) -> int:
    status = 0
    for lineno, line in enumerate(stream, 1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        tokens = text.split()
        try:
            if len(tokens) != 6:
                raise UsageError(f"expected 6 vertex coordinates, got {len(tokens)}")
            line_cfg = RunConfig(cfg.mode, tokens, cfg.targets, cfg.point, True, None, cfg.digits)
            report = run(line_cfg)
            report = {"schema": report.pop("schema"), "line": lineno, **report}
        except (ParseError, UsageError, GeometryError) as exc:
            status = max(status, _exit_code(exc))
            report = {"schema": SCHEMA, "line": lineno, "error": {"kind": type(exc).__name__, "message": _error_message(exc)}}
        out.write(to_json(report, indent=None) + "\n")
    return status


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_args(argv)
    except UsageError as exc:
        build_parser().print_usage(sys.stderr)
        print(f"feucheck: {exc}", file=sys.stderr)
        return 1
    if not cfg.coords:
        return run_batch(cfg, sys.stdin, sys.stdout)
    try:
        report = run(cfg)
    except (ParseError, GeometryError) as exc:
        print(f"feucheck: {_error_message(exc)}", file=sys.stderr)
        return _exit_code(exc)
    sys.stdout.write(to_json(report) + "\n" if cfg.as_json else to_text(report))
    return 0


if __name__ == "__main__":
    sys.exit(main())
