"""Conics as symmetric quadratic forms in barycentric coordinates.

A conic is the zero set of p^T q p.  Circles are built in cartesian form
u^2 + v^2 + Du + Ev + F = 0 and pulled back through the conversion matrix;
the cartesian view is kept only for the circle test and for reports.
"""

from __future__ import annotations

from dataclasses import dataclass

from .affinemap import AffineMap, anticomplement_map, complement_map
from .barycentric import (
    BaryLine,
    BaryPoint,
    CartPoint,
    TriangleCtx,
    dist2,
    from_cartesian,
    midpoint,
    to_cartesian,
)
from .cevian import check_admissible, signed_sides, touch_points
from .errors import CertificationError, CollinearPoints, DegenerateTriangle, PointNotOnConic
from .exactfield import FieldElem
from .linalg import Mat3, adjugate, det3, is_rational, mat_proportional, matmul, matvec, primitive, transpose


@dataclass(frozen=True, eq=False)
class Conic:
    q: Mat3
    tri: TriangleCtx

    def __post_init__(self):
        t = self.tri
        q = tuple(tuple(t(v) for v in row) for row in self.q)
        if any(q[i][j] != q[j][i] for i in range(3) for j in range(i)):
            raise ValueError("quadratic form must be symmetric")
        flat = [v for row in q for v in row]
        if not any(flat):
            raise ValueError("zero quadratic form")
        if all(is_rational(v) for v in flat):
            flat = primitive(flat)
            q = (flat[0:3], flat[3:6], flat[6:9])
        object.__setattr__(self, "q", q)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Conic):
            return NotImplemented
        return self.tri.same_as(other.tri) and mat_proportional(self.q, other.q)

    __hash__ = None

    def value(self, p: BaryPoint) -> FieldElem:
        v = tuple(self.tri(c) for c in p)
        qv = matvec(self.q, v)
        return v[0] * qv[0] + v[1] * qv[1] + v[2] * qv[2]

    def contains(self, p: BaryPoint) -> bool:
        return self.value(p) == 0

    def polar(self, p: BaryPoint) -> tuple:
        return matvec(self.q, tuple(self.tri(c) for c in p))

    def cartesian_matrix(self) -> Mat3:
        ainv = self.tri.convAinv
        return matmul(matmul(transpose(ainv), self.q), ainv)

    def cartesian(self) -> tuple:
        """(u^2, v^2, uv, u, v, 1) coefficients, scaled so the first nonzero of u^2, v^2 is 1."""
        m = self.cartesian_matrix()
        coeffs = (m[0][0], m[1][1], 2 * m[0][1], 2 * m[0][2], 2 * m[1][2], m[2][2])
        lead = next(c for c in coeffs if c != 0)
        inv = lead.inverse()
        return tuple(c * inv for c in coeffs)

    def is_circle(self) -> bool:
        cuu, cvv, cuv, cu, cv, c1 = self.cartesian()
        if cuv != 0 or cuu != cvv or cuu == 0:
            return False
        return self.radius2() > 0

    def center(self) -> CartPoint:
        cuu, _, _, cu, cv, _ = self.cartesian()
        return CartPoint(-cu / (2 * cuu), -cv / (2 * cuu))

    def radius2(self) -> FieldElem:
        cuu, _, _, cu, cv, c1 = self.cartesian()
        center = self.center()
        return center.u * center.u + center.v * center.v - c1 / cuu


def circle_from_center(tri: TriangleCtx, center: CartPoint, radius2) -> Conic:
    cu, cv = tri(center.u), tri(center.v)
    cart = ((tri(1), tri(0), -cu), (tri(0), tri(1), -cv), (-cu, -cv, cu * cu + cv * cv - radius2))
    return _from_cartesian_matrix(tri, cart)


def _from_cartesian_matrix(tri: TriangleCtx, cart: Mat3) -> Conic:
    A = tri.convA
    return Conic(matmul(matmul(transpose(A), cart), A), tri)


def circle_through(tri: TriangleCtx, p1: CartPoint, p2: CartPoint, p3: CartPoint) -> Conic:
    """The circle through three cartesian points."""
    pts = [(tri(p.u), tri(p.v)) for p in (p1, p2, p3)]
    M = tuple((u, v, tri(1)) for u, v in pts)
    d = det3(M)
    if d == 0:
        raise CollinearPoints("three collinear points lie on no circle")
    rhs = tuple(-(u * u + v * v) for u, v in pts)
    D, E, F = (x / d for x in matvec(adjugate(M), rhs))
    half_D, half_E = D / 2, E / 2
    cart = ((tri(1), tri(0), half_D), (tri(0), tri(1), half_E), (half_D, half_E, F))
    return _from_cartesian_matrix(tri, cart)


def foot_of_perpendicular(p: CartPoint, v: CartPoint, w: CartPoint) -> CartPoint:
    du, dv = w.u - v.u, w.v - v.v
    t = ((p.u - v.u) * du + (p.v - v.v) * dv) / (du * du + dv * dv)
    return CartPoint(v.u + t * du, v.v + t * dv)


@dataclass(frozen=True, eq=False)
class TriangleMetrics:
    tri: TriangleCtx
    a: FieldElem
    b: FieldElem
    c: FieldElem
    s: FieldElem
    area: FieldElem
    R: FieldElem
    r_i: FieldElem
    r_n: FieldElem
    r_A: FieldElem
    r_B: FieldElem
    r_C: FieldElem
    incenter: BaryPoint
    circumcenter: BaryPoint
    ninepoint_center: BaryPoint
    centroid: BaryPoint
    orthocenter: BaryPoint
    excenter_A: BaryPoint
    excenter_B: BaryPoint
    excenter_C: BaryPoint

    def radius(self, vertex: str | None = None) -> FieldElem:
        return {None: self.r_i, "A": self.r_A, "B": self.r_B, "C": self.r_C}[vertex]

    def center(self, vertex: str | None = None) -> BaryPoint:
        return {None: self.incenter, "A": self.excenter_A, "B": self.excenter_B, "C": self.excenter_C}[vertex]

    def is_equilateral(self) -> bool:
        return self.a == self.b == self.c


def _excenter(tri: TriangleCtx, vertex: str) -> BaryPoint:
    return BaryPoint(*signed_sides(tri, vertex))


def compute_metrics(tri: TriangleCtx) -> TriangleMetrics:
    """Side lengths, radii and classical centers, with the Euler and area identities checked."""
    a, b, c = tri.sides
    if tri.det == 0:
        raise DegenerateTriangle("degenerate: collinear vertices")
    s = (a + b + c) / 2
    area = abs(tri.det) / 2
    R = a * b * c / (4 * area)
    r_i = area / s
    a2, b2, c2 = a * a, b * b, c * c
    sa, sb, sc = b2 + c2 - a2, c2 + a2 - b2, a2 + b2 - c2
    O = BaryPoint(a2 * sa, b2 * sb, c2 * sc)
    H = BaryPoint(sb * sc, sa * sc, sa * sb)
    N = midpoint(O, H)
    Q = BaryPoint(a, b, c)

    Nc = to_cartesian(tri, N)
    D0 = CartPoint((tri.B.u + tri.C.u) / 2, (tri.B.v + tri.C.v) / 2)
    r_n = dist2(Nc, D0).sqrt()
    if r_n is None:
        raise CertificationError("nine-point radius left the tower")

    m = TriangleMetrics(
        tri, a, b, c, s, area, R, r_i, r_n,
        area / (s - a), area / (s - b), area / (s - c),
        Q, O, N, BaryPoint(tri(1), tri(1), tri(1)), H,
        _excenter(tri, "A"), _excenter(tri, "B"), _excenter(tri, "C"),
    )
    Oc, Qc = to_cartesian(tri, O), to_cartesian(tri, Q)
    checks = {
        "circumradius": all(dist2(Oc, V) == R * R for V in tri.vertices),
        "2r_n = R": 2 * r_n == R,
        "area = s r_i": area == s * r_i,
        "8 area r_n = abc": 8 * area * r_n == a * b * c,
        "euler": dist2(Oc, Qc) == R * (R - 2 * r_i) == 4 * r_n * (r_n - r_i),
        "K(O) = N": complement_map(tri)(O) == N,
    }
    failed = [k for k, ok in checks.items() if not ok]
    if failed:
        raise CertificationError(f"metric identities failed: {failed}")
    return m


def _tangent_circle(tri: TriangleCtx, metrics: TriangleMetrics, vertex: str | None, check: bool) -> Conic:
    center = to_cartesian(tri, metrics.center(vertex))
    A, B, C = tri.vertices
    feet = (
        foot_of_perpendicular(center, B, C),
        foot_of_perpendicular(center, C, A),
        foot_of_perpendicular(center, A, B),
    )
    circle = circle_through(tri, *feet)
    if check:
        expected = touch_points(tri, vertex)
        if any(from_cartesian(tri, f) != e for f, e in zip(feet, expected)):
            raise CertificationError("perpendicular feet disagree with tangent lengths")
        r = metrics.radius(vertex)
        if circle != circle_from_center(tri, center, r * r):
            raise CertificationError("circle through the feet has the wrong center or radius")
    return circle


def incircle(tri: TriangleCtx, metrics: TriangleMetrics | None = None, check: bool = True) -> Conic:
    return _tangent_circle(tri, metrics or compute_metrics(tri), None, check)


def excircle(tri: TriangleCtx, vertex: str, metrics: TriangleMetrics | None = None, check: bool = True) -> Conic:
    signed_sides(tri, vertex)
    return _tangent_circle(tri, metrics or compute_metrics(tri), vertex, check)


def circumcircle(tri: TriangleCtx) -> Conic:
    return circle_through(tri, *tri.vertices)


def ninepoint_circle(tri: TriangleCtx, metrics: TriangleMetrics | None = None, check: bool = True) -> Conic:
    A, B, C = tri.vertices
    mids = [CartPoint((p.u + q.u) / 2, (p.v + q.v) / 2) for p, q in ((B, C), (C, A), (A, B))]
    circle = circle_through(tri, *mids)
    if check:
        metrics = metrics or compute_metrics(tri)
        H = to_cartesian(tri, metrics.orthocenter)
        feet = [foot_of_perpendicular(A, B, C), foot_of_perpendicular(B, C, A), foot_of_perpendicular(C, A, B)]
        euler = [CartPoint((V.u + H.u) / 2, (V.v + H.v) / 2) for V in (A, B, C)]
        pts = [from_cartesian(tri, p) for p in feet + euler]
        if not all(circle.contains(p) for p in pts):
            raise CertificationError("nine-point circle misses an altitude foot or Euler point")
        if circle != circle_from_center(tri, to_cartesian(tri, metrics.ninepoint_center), metrics.r_n**2):
            raise CertificationError("nine-point circle has the wrong center or radius")
        if map_conic(anticomplement_map(tri), circle) != circumcircle(tri):
            raise CertificationError("anticomplement of the nine-point circle is not the circumcircle")
    return circle


def ninepoint_conic(tri: TriangleCtx, P: BaryPoint, check: bool = True) -> Conic:
    """x X^2 + y Y^2 + z Z^2 - (x+y) XY - (x+z) XZ - (y+z) YZ = 0 for P = (x, y, z)."""
    check_admissible(tri, P)
    x, y, z = (tri(v) for v in P)
    q = (
        (2 * x, -(x + y), -(x + z)),
        (-(x + y), 2 * y, -(y + z)),
        (-(x + z), -(y + z), 2 * z),
    )
    conic = Conic(q, tri)
    if check:
        zero, one = tri(0), tri(1)
        six = [
            BaryPoint(zero, one, one), BaryPoint(one, zero, one), BaryPoint(one, one, zero),
            BaryPoint(zero, z, y), BaryPoint(z, zero, x), BaryPoint(y, x, zero),
        ]
        if not all(conic.contains(p) for p in six):
            raise CertificationError("nine-point conic misses one of its six defining points")
    return conic


def map_conic(f: AffineMap, conic: Conic) -> Conic:
    """Image of a conic: q' = (m^-1)^T q m^-1, using the adjugate since scale is irrelevant."""
    minv = adjugate(f.m)
    return Conic(matmul(matmul(transpose(minv), conic.q), minv), conic.tri)


def tangent_line_at(conic: Conic, p: BaryPoint) -> BaryLine:
    if not conic.contains(p):
        raise PointNotOnConic(f"{p} is not on the conic")
    coeffs = conic.polar(p)
    if all(v == 0 for v in coeffs):
        raise PointNotOnConic(f"{p} is a singular point of the conic")
    return BaryLine(*coeffs)


@dataclass(frozen=True)
class TangencyCertificate:
    point: BaryPoint
    tangent: BaryLine
    on_first: bool
    on_second: bool
    same_tangent: bool

    @property
    def ok(self) -> bool:
        return self.on_first and self.on_second and self.same_tangent


def certify_tangency(c1: Conic, c2: Conic, p: BaryPoint) -> TangencyCertificate:
    """Exact proof that c1 and c2 touch at p: a shared point with equal polar lines."""
    t1 = tangent_line_at(c1, p)
    t2 = tangent_line_at(c2, p)
    return TangencyCertificate(p, t1, True, True, t1 == t2)
