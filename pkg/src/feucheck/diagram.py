"""Static SVG rendering of a certificate: triangle, the five circles, tangency points."""

from __future__ import annotations

from pathlib import Path

from .barycentric import to_cartesian
from .feuerbach import FeuerbachCertificate

COLORS = {
    "ninepoint": "#1f77b4",
    "incircle": "#d62728",
    "excircle_A": "#2ca02c",
    "excircle_B": "#9467bd",
    "excircle_C": "#ff7f0e",
}


def _circles(cert: FeuerbachCertificate):
    m = cert.metrics
    tri = cert.tri
    out = []
    n = to_cartesian(tri, m.ninepoint_center)
    out.append(("ninepoint", float(n.u), float(n.v), float(m.r_n)))
    for name, rec in cert.records.items():
        c = to_cartesian(tri, rec.center)
        out.append((name, float(c.u), float(c.v), float(rec.radius)))
    return out


def render_svg(cert: FeuerbachCertificate) -> str:
    """SVG text for ``cert``; y is flipped so the picture reads like the plane."""
    tri = cert.tri
    verts = [(float(p.u), -float(p.v)) for p in tri.vertices]
    circles = [(name, u, -v, r) for name, u, v, r in _circles(cert)]
    marks = [(name, float(r.Z_cartesian.u), -float(r.Z_cartesian.v)) for name, r in cert.records.items()]

    xs = [x for x, _ in verts] + [u - r for _, u, _, r in circles] + [u + r for _, u, _, r in circles]
    ys = [y for _, y in verts] + [v - r for _, _, v, r in circles] + [v + r for _, _, v, r in circles]
    lo_x, hi_x, lo_y, hi_y = min(xs), max(xs), min(ys), max(ys)
    pad = 0.1 * max(hi_x - lo_x, hi_y - lo_y)
    lo_x, lo_y = lo_x - pad, lo_y - pad
    w, h = hi_x - lo_x + pad, hi_y - lo_y + pad
    stroke = max(w, h) / 400
    tick = max(w, h) / 80

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{lo_x:.6f} {lo_y:.6f} {w:.6f} {h:.6f}">',
        f'<polygon points="{" ".join(f"{x:.6f},{y:.6f}" for x, y in verts)}" '
        f'fill="none" stroke="#000000" stroke-width="{stroke:.6f}"/>',
    ]
    for name, u, v, r in circles:
        lines.append(
            f'<circle id="{name}" cx="{u:.6f}" cy="{v:.6f}" r="{r:.6f}" '
            f'fill="none" stroke="{COLORS.get(name, "#000000")}" stroke-width="{stroke:.6f}"/>'
        )
    for name, u, v in marks:
        # a small cross, so markers are never confused with the circles
        d = f"M {u - tick:.6f} {v - tick:.6f} L {u + tick:.6f} {v + tick:.6f} M {u - tick:.6f} {v + tick:.6f} L {u + tick:.6f} {v - tick:.6f}"
        lines.append(f'<path class="feuerbach" id="Z_{name}" d="{d}" stroke="#000000" stroke-width="{stroke:.6f}"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def emit_svg(cert: FeuerbachCertificate, path) -> Path:
    path = Path(path)
    path.write_text(render_svg(cert), encoding="utf-8")
    return path
