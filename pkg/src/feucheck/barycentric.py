"""Homogeneous barycentric coordinates with respect to a reference triangle.

A point (x, y, z) stands for the cartesian point
(x*A + y*B + z*C) / (x + y + z); triples with x + y + z = 0 are ideal points
(directions).  Triples are stored unnormalized and compared projectively.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterator

from .errors import DegenerateTriangle, IdealPoint, IdenticalArguments
from .exactfield import FieldElem, TowerCtx, common_ctx, sqrt_or_adjoin
from .linalg import Mat3, cross, det3, div, dot, inv3, matvec, primitive, proportional


@dataclass(frozen=True, slots=True)
class CartPoint:
    u: Any
    v: Any

    def __iter__(self) -> Iterator:
        return iter((self.u, self.v))

    def __add__(self, other: CartPoint) -> CartPoint:
        return CartPoint(self.u + other.u, self.v + other.v)

    def __sub__(self, other: CartPoint) -> CartPoint:
        return CartPoint(self.u - other.u, self.v - other.v)

    def scaled(self, k) -> CartPoint:
        return CartPoint(self.u * k, self.v * k)


def dist2(p: CartPoint, q: CartPoint):
    du, dv = p.u - q.u, p.v - q.v
    return du * du + dv * dv


class _Triple:
    __slots__ = ("coords",)

    def __init__(self, x, y, z):
        if x == 0 and y == 0 and z == 0:
            raise ValueError(f"{type(self).__name__} needs a nonzero triple")
        self.coords = (x, y, z)

    def __iter__(self) -> Iterator:
        return iter(self.coords)

    def __getitem__(self, i: int):
        return self.coords[i]

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return proportional(self.coords, other.coords)

    def __hash__(self) -> int:
        lead = next(c for c in self.coords if c != 0)
        return hash(tuple(div(c, lead) for c in self.coords))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({', '.join(str(c) for c in self.coords)})"

    def tidy(self):
        return type(self)(*primitive(self.coords))


class BaryPoint(_Triple):
    """A projective point; equality ignores a common nonzero factor."""

    __slots__ = ()

    @property
    def x(self):
        return self.coords[0]

    @property
    def y(self):
        return self.coords[1]

    @property
    def z(self):
        return self.coords[2]

    @property
    def s(self):
        return self.coords[0] + self.coords[1] + self.coords[2]

    def is_ideal(self) -> bool:
        return self.s == 0

    def normalized(self) -> BaryPoint:
        """The representative with coordinate sum 1."""
        s = self.s
        if s == 0:
            raise IdealPoint("ideal points have no affine normalization")
        return BaryPoint(*(div(c, s) for c in self.coords))


class BaryLine(_Triple):
    """Line alpha*x + beta*y + gamma*z = 0."""

    __slots__ = ()

    def contains(self, p: BaryPoint) -> bool:
        return dot(self.coords, p.coords) == 0


LINE_AT_INFINITY = BaryLine(1, 1, 1)
VERTEX_A = BaryPoint(1, 0, 0)
VERTEX_B = BaryPoint(0, 1, 0)
VERTEX_C = BaryPoint(0, 0, 1)
CENTROID = BaryPoint(1, 1, 1)


@dataclass(frozen=True, eq=False)
class TriangleCtx:
    """Reference triangle with its exact conversion matrix and side lengths.

    ``tower`` already contains the three side lengths, so every later
    construction for this triangle stays inside one field.
    """

    A: CartPoint
    B: CartPoint
    C: CartPoint
    convA: Mat3
    convAinv: Mat3
    tower: TowerCtx
    a: FieldElem
    b: FieldElem
    c: FieldElem
    det: FieldElem

    def __call__(self, value) -> FieldElem:
        return self.tower(value)

    def point(self, x, y, z) -> BaryPoint:
        t = self.tower
        return BaryPoint(t(x), t(y), t(z))

    @property
    def vertices(self) -> tuple[CartPoint, CartPoint, CartPoint]:
        return self.A, self.B, self.C

    @property
    def sides(self) -> tuple[FieldElem, FieldElem, FieldElem]:
        return self.a, self.b, self.c

    def same_as(self, other: TriangleCtx) -> bool:
        return self is other or (
            self.tower == other.tower and self.A == other.A and self.B == other.B and self.C == other.C
        )


def make_triangle(A: CartPoint, B: CartPoint, C: CartPoint) -> TriangleCtx:
    """Build the reference triangle, adjoining side-length roots as needed."""
    coords = [A.u, A.v, B.u, B.v, C.u, C.v]
    ctx = common_ctx(coords)
    coords = [ctx(c) for c in coords]

    def conv(cs):
        au, av, bu, bv, cu, cv = cs
        return ((au, bu, cu), (av, bv, cv), (ctx(1), ctx(1), ctx(1)))

    d = det3(conv(coords))
    if d == 0:
        raise DegenerateTriangle("degenerate: collinear vertices")

    sides = []
    for (pu, pv), (qu, qv) in (((2, 3), (4, 5)), ((4, 5), (0, 1)), ((0, 1), (2, 3))):
        du, dv = coords[pu] - coords[qu], coords[pv] - coords[qv]
        sq = du * du + dv * dv
        sq = ctx(sq)
        new_ctx, root = sqrt_or_adjoin(sq)
        if new_ctx is not ctx:
            ctx = new_ctx
            coords = [ctx(c) for c in coords]
            sides = [ctx(s) for s in sides]
        sides.append(ctx(root))

    m = conv(coords)
    d = ctx(d)
    A2, B2, C2 = (CartPoint(coords[i], coords[i + 1]) for i in (0, 2, 4))
    return TriangleCtx(A2, B2, C2, m, inv3(m), ctx, sides[0], sides[1], sides[2], d)


def to_cartesian(tri: TriangleCtx, p: BaryPoint) -> CartPoint:
    x, y, z = (tri(c) for c in p)
    s = x + y + z
    if s == 0:
        raise IdealPoint(f"{p} lies on the line at infinity")
    inv = s.inverse()
    u, v, _ = matvec(tri.convA, (x, y, z))
    return CartPoint(u * inv, v * inv)


def from_cartesian(tri: TriangleCtx, q: CartPoint) -> BaryPoint:
    x, y, z = matvec(tri.convAinv, (tri(q.u), tri(q.v), tri(1)))
    return BaryPoint(*primitive((x, y, z)))


def direction_to_bary(tri: TriangleCtx, du, dv) -> BaryPoint:
    """The ideal point of cartesian direction (du, dv)."""
    return BaryPoint(*matvec(tri.convAinv, (tri(du), tri(dv), tri(0))))


def line_through(p: BaryPoint, q: BaryPoint) -> BaryLine:
    coeffs = cross(p.coords, q.coords)
    if all(c == 0 for c in coeffs):
        raise IdenticalArguments(f"{p} and {q} are the same point")
    return BaryLine(*coeffs)


def meet(l: BaryLine, m: BaryLine) -> BaryPoint:
    coords = cross(l.coords, m.coords)
    if all(c == 0 for c in coords):
        raise IdenticalArguments(f"{l} and {m} are the same line")
    return BaryPoint(*coords)


def collinear(p: BaryPoint, q: BaryPoint, r: BaryPoint) -> bool:
    return det3((p.coords, q.coords, r.coords)) == 0


def midpoint(p: BaryPoint, q: BaryPoint) -> BaryPoint:
    sp, sq = p.s, q.s
    if sp == 0 or sq == 0:
        raise IdealPoint("midpoint of an ideal point")
    return BaryPoint(*(a * sq + b * sp for a, b in zip(p, q)))


def reflect_in(p: BaryPoint, center: BaryPoint) -> BaryPoint:
    """Point reflection of ``p`` through ``center``."""
    sp, sc = p.s, center.s
    if sp == 0 or sc == 0:
        raise IdealPoint("reflection involving an ideal point")
    return BaryPoint(*(2 * c * sp - a * sc for a, c in zip(p, center)))
