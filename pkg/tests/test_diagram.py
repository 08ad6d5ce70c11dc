import xml.etree.ElementTree as ET

import pytest

from feucheck.cli import main
from feucheck.diagram import emit_svg, render_svg
from feucheck.feuerbach import certify

NS = {"svg": "http://www.w3.org/2000/svg"}


def parse_svg(text):
    root = ET.fromstring(text)
    x, y, w, h = (float(v) for v in root.get("viewBox").split())
    return root, (x, y, w, h)


def test_worked_structure(worked, tmp_path):
    path = emit_svg(certify(worked), tmp_path / "worked.svg")
    root, _ = parse_svg(path.read_text())
    assert len(root.findall("svg:circle", NS)) == 5
    assert len(root.findall("svg:path[@class='feuerbach']", NS)) == 4
    assert len(root.findall("svg:polygon", NS)) == 1


def test_right_marker_inside_viewbox(right345):
    root, (x, y, w, h) = parse_svg(render_svg(certify(right345)))
    marker = root.find("svg:path[@id='Z_incircle']", NS)
    coords = [float(t) for t in marker.get("d").replace("M", " ").replace("L", " ").split()]
    cx = (coords[0] + coords[2]) / 2
    cy = (coords[1] + coords[3]) / 2
    # y is flipped in the picture
    assert cx == pytest.approx(1.0) and cy == pytest.approx(-2.0)
    assert x <= cx <= x + w and y <= cy <= y + h


def test_viewbox_margin(right345):
    root, (x, y, w, h) = parse_svg(render_svg(certify(right345)))
    # excircle A: center (6, 6), radius 6 reaches u = 12, and the box extends 10% further
    extent = max(w, h) / 1.2
    assert x + w == pytest.approx(12 + 0.1 * extent, rel=1e-6)


def test_cli_writes_svg(tmp_path, capsys):
    out = tmp_path / "fig.svg"
    assert main(["centers", "--svg", str(out), "4", "0", "0", "3", "-2", "0"]) == 0
    capsys.readouterr()
    root, _ = parse_svg(out.read_text())
    assert len(root.findall("svg:circle", NS)) == 5


def test_no_svg_for_equilateral(tmp_path, capsys):
    out = tmp_path / "eq.svg"
    assert main(["certify", "--svg", str(out), "0", "0", "1", "0", "1/2", "sqrt(3)/2"]) == 2
    assert not out.exists()
