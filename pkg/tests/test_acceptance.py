"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Expected values for the worked example are sympy expressions checked
against our exact results; the random suites compare independent
computations of the same quantity with exact equality.
"""

import contextlib
import io
import random
import time
from fractions import Fraction
from pathlib import Path

import mpmath
import sympy as sp

from feucheck.affinemap import MapKind, classify, complement_map, det_ratio, fixed_points
from feucheck.barycentric import VERTEX_A, CartPoint, dist2, line_through, meet, midpoint, to_cartesian
from feucheck.cevian import (
    bisecting_point,
    build_cevian_config,
    gergonne_point,
    t1_matrix,
    t2_matrix,
    touch_points,
)
from feucheck.cli import main
from feucheck.conics import certify_tangency, compute_metrics, incircle, map_conic, ninepoint_circle, ninepoint_conic
from feucheck.exactfield import QQ, FieldElem, adjoin_sqrt, sign_of, sqrt_in_tower
from feucheck.feuerbach import TARGETS, build_phi, certify, feuerbach_point_from_sides, fixed_point_formula
from feucheck.linalg import matadd, scale

from conftest import S13, proportional_sym, record, same, same_point, triangle
from test_exactfield import TOWERS, mp_value

GOLDEN = Path(__file__).parent / "golden"


# -- criterion 1 -----------------------------------------------------------------


def test_criterion_1_worked_example():
    start = time.perf_counter()
    tri = triangle(4, 0, 0, 3, -2, 0)
    m = compute_metrics(tri)
    N = ninepoint_circle(tri, m)
    I = incircle(tri, m)
    touch = [to_cartesian(tri, p) for p in touch_points(tri)]
    P = gergonne_point(tri)
    Pc = to_cartesian(tri, P)
    Z = feuerbach_point_from_sides(m)
    cert = certify(tri)
    elapsed = time.perf_counter() - start

    checks = {
        "sides": same(tri.a, S13) and tri.b == 6 and tri.c == 5,
        "nine-point circle": all(same(c, e) for c, e in zip(N.cartesian(), (1, 1, 0, -1, sp.Rational(-17, 6), 0))),
        "incenter": same_point(to_cartesian(tri, m.incenter), ((-3 + S13) / 2, (11 - S13) / 6)),
        "incircle": all(
            same(c, e) for c, e in zip(I.cartesian(), (1, 1, 0, 3 - S13, (-11 + S13) / 3, (11 - 3 * S13) / 2))
        ),
        "touch points": all(
            same_point(t, e)
            for t, e in zip(
                touch,
                (
                    ((-13 + S13) / 13, (39 + 3 * S13) / 26),
                    ((-3 + S13) / 2, 0),
                    ((-2 + 2 * S13) / 5, (33 - 3 * S13) / 10),
                ),
            )
        ),
        "gergonne cartesian": same_point(Pc, ((-115 + 37 * S13) / 127, (177 + 6 * S13) / 127)),
        "gergonne barycentric": proportional_sym(P, ((11 + S13) / 108, (1 + S13) / 12, (-1 + S13) / 12)),
        "xi eta zeta": all(same(c, e) for c, e in zip(Z, (11 - S13, -168 + 48 * S13, -107 + 37 * S13)))
        and same(Z.s, -264 + 84 * S13),
        "feuerbach cartesian": same_point(
            cert.records["incircle"].Z_cartesian, ((-79 + 5 * S13) / 102, (56 - 10 * S13) / 51)
        ),
        "certificate": cert.all_exact,
        "runtime < 1 s": elapsed < 1.0,
    }
    failed = [k for k, ok in checks.items() if not ok]
    record(1, not failed, f"worked example in Q(sqrt 13), {elapsed:.3f} s" + (f"; failed {failed}" if failed else ""))
    assert not failed


# -- criterion 2 -----------------------------------------------------------------


def test_criterion_2_right_triangle():
    start = time.perf_counter()
    tri = triangle(0, 0, 4, 0, 0, 3)
    cert = certify(tri)
    m = cert.metrics
    elapsed = time.perf_counter() - start
    Nc = to_cartesian(tri, m.ninepoint_center)
    Qc = to_cartesian(tri, m.incenter)
    NQ = dist2(Nc, Qc).sqrt()
    checks = {
        "incenter": Qc == CartPoint(1, 1),
        "r_i": m.r_i == 1,
        "N": Nc == CartPoint(1, Fraction(3, 4)),
        "r_n": m.r_n == Fraction(5, 4),
        "Z": cert.records["incircle"].Z_cartesian == CartPoint(1, 2),
        "|NQ| = r_n - r_i": NQ is not None and NQ == m.r_n - m.r_i == Fraction(1, 4),
        "certificate": cert.all_exact,
    }
    failed = [k for k, ok in checks.items() if not ok]
    record(2, not failed, f"3-4-5 triangle, {elapsed:.3f} s" + (f"; failed {failed}" if failed else ""))
    assert not failed


# -- criterion 3 -----------------------------------------------------------------


def random_triangles(rng, general=150, isosceles=60):
    def q():
        return Fraction(rng.randint(-15, 15), rng.randint(1, 5))

    out = []
    while len(out) < general:
        (au, av), (bu, bv), (cu, cv) = [(q(), q()) for _ in range(3)]
        if (bu - au) * (cv - av) - (bv - av) * (cu - au) != 0:
            out.append((triangle(au, av, bu, bv, cu, cv), False))
    while len(out) < general + isosceles:
        # apex on the perpendicular bisector of a base; the apex label rotates
        m, w, h = q(), q(), q()
        if w == 0 or h == 0:
            continue
        base = [(m - w, Fraction(0)), (m + w, Fraction(0))]
        apex = (m, h)
        k = len(out) % 3
        pts = base[:k] + [apex] + base[k:]
        out.append((triangle(*(c for p in pts for c in p)), True))
    return out


def property_checks(tri, isosceles):
    m = compute_metrics(tri)
    N = ninepoint_circle(tri, m)
    Nc = to_cartesian(tri, m.ninepoint_center)
    K = complement_map(tri)
    a, b, c = tri.sides
    res = {}

    def put(key, ok):
        res[key] = res.get(key, True) and bool(ok)

    O, Q = to_cartesian(tri, m.circumcenter), to_cartesian(tri, m.incenter)
    put("g", dist2(O, Q) == m.R * (m.R - 2 * m.r_i) == 4 * m.r_n * (m.r_n - m.r_i))

    cert = certify(tri)
    for name, vertex in TARGETS.items():
        rec = cert.records[name]
        P = rec.P
        phi = build_phi(tri, P)
        cls = classify(phi)
        cfg = build_cevian_config(tri, P)
        put("a", cls.kind is MapKind.HOMOTHETY)

        Z1 = fixed_point_formula(P)
        Z2 = fixed_points(phi)
        Z3 = feuerbach_point_from_sides(m, vertex)
        put("b", len(Z2) == 1 and Z1 == Z2[0] == Z3 == cls.center)

        circle = rec.circle
        put("c", circle.contains(Z1) and N.contains(Z1) and certify_tangency(N, circle, Z1).ok)
        put("d", map_conic(phi, N) == circle)

        x, y, z = P
        raw = matadd(t1_matrix(x, y, z), t2_matrix(x, y, z))
        put("e", raw == scale(K.m, (x + y) * (x + z) * (y + z)))

        r = m.radius(vertex)
        put("f", det_ratio(phi) == (r / m.r_n) ** 2 == cls.ratio**2)

        Xc = to_cartesian(tri, m.center(vertex))
        sign = -1 if vertex is None else 1
        put("h", dist2(Nc, Xc) == (m.r_n + sign * r) ** 2)

        comm = cfg.T2 @ cfg.T1 @ cfg.T2.inverse() @ cfg.T1.inverse()
        put("i", classify(comm).kind in (MapKind.TRANSLATION, MapKind.IDENTITY))

        Qp = bisecting_point(P)
        put("j", meet(line_through(VERTEX_A, Qp), line_through(cfg.E, cfg.F)) == midpoint(cfg.E, cfg.F))

        E1 = ninepoint_conic(tri, P)
        put("k", all(E1.contains(p) for p in cfg.midpoints + cfg.reflections) and E1.contains(Z1))

    if not isosceles:
        cfg = build_cevian_config(tri, gergonne_point(tri))
        formula = (a + b - c) * (a - b + c) * (-a + b + c) / (4 * a * b * c)
        put("f", det_ratio(cfg.T1) == det_ratio(cfg.T2) == formula)
    return res


def test_criterion_3_random_triangles():
    rng = random.Random(20261015)
    start = time.perf_counter()
    cases = random_triangles(rng)
    failures: dict[str, int] = {}
    for tri, iso in cases:
        for key, ok in property_checks(tri, iso).items():
            if not ok:
                failures[key] = failures.get(key, 0) + 1
    elapsed = time.perf_counter() - start
    n_iso = sum(iso for _, iso in cases)
    ok = not failures and elapsed < 60 and len(cases) >= 200 and n_iso >= 50
    detail = f"{len(cases)} triangles ({n_iso} isosceles), properties a-k, {elapsed:.1f} s"
    if failures:
        detail += f"; failures {failures}"
    record(3, ok, detail)
    assert ok


# -- criterion 4 -----------------------------------------------------------------


def random_element(rng, ctx):
    den = rng.randint(1, 9)
    return FieldElem(ctx, [rng.randint(-30, 30) for _ in range(ctx.dim)], den)


def test_criterion_4_field_layer():
    rng = random.Random(4)
    towers = [t for t in TOWERS.values() if t.dim <= 8]
    checks = failures = 0
    start = time.perf_counter()
    mpmath.mp.dps = 50

    def check(ok):
        nonlocal checks, failures
        checks += 1
        failures += not ok

    while checks < 10_000:
        ctx = rng.choice(towers)
        x, y, z = (random_element(rng, ctx) for _ in range(3))
        check((x + y) + z == x + (y + z))
        check((x * y) * z == x * (y * z))
        check(x * (y + z) == x * y + x * z)
        check(not x or x * x.inverse() == 1)
        check(sign_of(x * y) == sign_of(x) * sign_of(y))
        check(not (sign_of(x) > 0 and sign_of(y) > 0) or sign_of(x + y) > 0)
        v = mp_value(x)
        check(sign_of(x) == (v > 0) - (v < 0) and abs(float(x) - float(v)) <= 1e-9 * max(1.0, abs(float(v))))
        check(sqrt_in_tower(x * x) == abs(x))
    # adjoin then extract
    for n in (2, 3, 5, 6, 7, 10, 11, 13):
        t, r = adjoin_sqrt(QQ, n)
        check(sqrt_in_tower(t(n)) == r and r * r == n)
    elapsed = time.perf_counter() - start
    ok = failures == 0 and elapsed < 10
    record(4, ok, f"{checks} field checks on towers up to dim 8, {failures} failures, {elapsed:.2f} s")
    assert ok


# -- criterion 5 -----------------------------------------------------------------


def _run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


def test_criterion_5_cli_contract():
    fixtures = {"worked": ["4", "0", "0", "3", "-2", "0"], "right": ["0", "0", "4", "0", "0", "3"]}
    problems = []
    for name, coords in fixtures.items():
        for mode in ("certify", "centers"):
            first = _run_cli([mode, "--json", *coords])
            second = _run_cli([mode, "--json", *coords])
            golden = (GOLDEN / f"{mode}_{name}.json").read_text()
            if first[0] != 0 or first[1] != golden or second[1] != first[1]:
                problems.append(f"{mode} {name} not byte-stable")
    contract = [
        (["certify", "0", "0", "1", "0", "2", "0"], 2, "degenerate: collinear vertices"),
        (["certify", "0", "0", "1", "0", "1/2", "sqrt(3)/2"], 2, "equilateral"),
        (["certify", "0", "0", "1", "0", "1/2", "sqrt(3)/2#"], 1, "position 9"),
    ]
    for argv, code, message in contract:
        got, _, err = _run_cli(argv)
        if got != code or message not in err:
            problems.append(f"{argv}: exit {got}, stderr {err.strip()!r}")
    record(5, not problems, "golden JSON for both fixtures; exit codes 2, 2, 1" + (f"; {problems}" if problems else ""))
    assert not problems
