"""Cevian triangles of a parameter point P and the maps T1, T2 built from them.

For P = (x, y, z) the traces are D = (0, y, z), E = (x, 0, z), F = (x, y, 0);
T1 sends ABC to DEF and T2 sends ABC to the reflections D', E', F' of the
traces in the side midpoints.
"""

from __future__ import annotations

from dataclasses import dataclass

from .affinemap import AffineMap, map_from_triangles
from .barycentric import (
    VERTEX_A,
    VERTEX_B,
    VERTEX_C,
    BaryPoint,
    TriangleCtx,
    line_through,
    meet,
    reflect_in,
)
from .errors import CertificationError, InadmissiblePoint, OnSideline
from .linalg import primitive

VERTICES = ("A", "B", "C")


@dataclass(frozen=True, eq=False)
class CevianConfig:
    tri: TriangleCtx
    P: BaryPoint
    D: BaryPoint
    E: BaryPoint
    F: BaryPoint
    D_ref: BaryPoint
    E_ref: BaryPoint
    F_ref: BaryPoint
    D0: BaryPoint
    E0: BaryPoint
    F0: BaryPoint
    T1: AffineMap
    T2: AffineMap

    @property
    def traces(self) -> tuple[BaryPoint, BaryPoint, BaryPoint]:
        return self.D, self.E, self.F

    @property
    def reflections(self) -> tuple[BaryPoint, BaryPoint, BaryPoint]:
        return self.D_ref, self.E_ref, self.F_ref

    @property
    def midpoints(self) -> tuple[BaryPoint, BaryPoint, BaryPoint]:
        return self.D0, self.E0, self.F0


def check_admissible(tri: TriangleCtx, P: BaryPoint) -> None:
    x, y, z = (tri(c) for c in P)
    if x * y * z == 0:
        raise InadmissiblePoint(f"{P} lies on a side line of ABC (xyz = 0)")
    if (x + y) * (y + z) * (z + x) == 0:
        raise InadmissiblePoint(f"{P} lies on a side line of the anticomplementary triangle ((x+y)(y+z)(z+x) = 0)")


def t1_matrix(x, y, z):
    xp, yp, zp = x * (y + z), y * (z + x), z * (x + y)
    return (
        (0 * x, xp * (x + y), xp * (x + z)),
        (yp * (x + y), 0 * x, yp * (y + z)),
        (zp * (x + z), zp * (y + z), 0 * x),
    )


def t2_matrix(x, y, z):
    xp, yp, zp = x * (y + z), y * (z + x), z * (x + y)
    return (
        (0 * x, zp * (y + z), yp * (y + z)),
        (zp * (x + z), 0 * x, xp * (x + z)),
        (yp * (x + y), xp * (x + y), 0 * x),
    )


def build_cevian_config(tri: TriangleCtx, P: BaryPoint, check: bool = True) -> CevianConfig:
    check_admissible(tri, P)
    x, y, z = (tri(c) for c in P)
    zero, one = tri(0), tri(1)
    D, E, F = BaryPoint(zero, y, z), BaryPoint(x, zero, z), BaryPoint(x, y, zero)
    D0, E0, F0 = BaryPoint(zero, one, one), BaryPoint(one, zero, one), BaryPoint(one, one, zero)
    Dr, Er, Fr = reflect_in(D, D0), reflect_in(E, E0), reflect_in(F, F0)
    T1 = AffineMap(t1_matrix(x, y, z), tri)
    T2 = AffineMap(t2_matrix(x, y, z), tri)
    if check:
        ABC = (VERTEX_A, VERTEX_B, VERTEX_C)
        if T1 != map_from_triangles(tri, ABC, (D, E, F)):
            raise CertificationError("T1 matrix disagrees with the map ABC -> DEF")
        if T2 != map_from_triangles(tri, ABC, (Dr, Er, Fr)):
            raise CertificationError("T2 matrix disagrees with the map ABC -> D'E'F'")
    return CevianConfig(tri, BaryPoint(x, y, z), D, E, F, Dr, Er, Fr, D0, E0, F0, T1, T2)


def isotomic_conjugate(P: BaryPoint) -> BaryPoint:
    x, y, z = P
    if x * y * z == 0:
        raise OnSideline(f"{P} lies on a side line; isotomic conjugate undefined")
    return BaryPoint(y * z, x * z, x * y)


def bisecting_point(P: BaryPoint) -> BaryPoint:
    """(x(y+z), y(z+x), z(x+y)): its cevians bisect the sides of DEF."""
    x, y, z = P
    return BaryPoint(x * (y + z), y * (z + x), z * (x + y))


def signed_sides(tri: TriangleCtx, vertex: str | None = None):
    """Side lengths with the one opposite ``vertex`` negated.

    Negating a turns every incircle formula into the corresponding formula
    for the excircle opposite A.
    """
    a, b, c = tri.sides
    if vertex is None:
        return a, b, c
    if vertex == "A":
        return -a, b, c
    if vertex == "B":
        return a, -b, c
    if vertex == "C":
        return a, b, -c
    raise ValueError(f"vertex must be one of A, B, C, got {vertex!r}")


def touch_points(tri: TriangleCtx, vertex: str | None = None) -> tuple[BaryPoint, BaryPoint, BaryPoint]:
    """Where the incircle (or the excircle opposite ``vertex``) meets lines BC, CA, AB.

    Built from tangent lengths: BD = s - b, CD = s - c for the incircle.
    """
    a, b, c = signed_sides(tri, vertex)
    s = (a + b + c) / 2
    zero = tri(0)
    D = BaryPoint(zero, s - c, s - b)
    E = BaryPoint(s - c, zero, s - a)
    F = BaryPoint(s - b, s - a, zero)
    return tuple(BaryPoint(*primitive(p.coords)) for p in (D, E, F))


def gergonne_point(tri: TriangleCtx) -> BaryPoint:
    """(1/(b+c-a), 1/(a+c-b), 1/(a+b-c)) with denominators cleared."""
    a, b, c = tri.sides
    pa, pb, pc = b + c - a, a + c - b, a + b - c
    return BaryPoint(*primitive((pb * pc, pa * pc, pa * pb)))


def external_gergonne_point(tri: TriangleCtx, vertex: str) -> BaryPoint:
    """Concurrence point of the cevians through the excircle's touch points."""
    D1, E1, F1 = touch_points(tri, vertex)
    P = meet(line_through(VERTEX_A, D1), line_through(VERTEX_B, E1))
    if not line_through(VERTEX_C, F1).contains(P):
        raise CertificationError(f"cevians to the excircle opposite {vertex} are not concurrent")
    return BaryPoint(*primitive(P.coords))
