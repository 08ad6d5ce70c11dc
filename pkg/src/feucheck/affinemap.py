"""Affine maps as 3x3 matrices acting on homogeneous barycentric columns.

A nonsingular matrix represents an affine map exactly when it sends the line
at infinity to itself, i.e. when all its column sums agree.  Classification
conjugates to cartesian form, where a homothety is a scalar linear part.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .barycentric import (
    VERTEX_A,
    VERTEX_B,
    VERTEX_C,
    BaryPoint,
    CartPoint,
    TriangleCtx,
    direction_to_bary,
    from_cartesian,
)
from .errors import CollinearTriple, CtxMismatch, IdealPoint, InfiniteFixedSet
from .exactfield import FieldElem
from .linalg import Mat3, adjugate, det3, identity3, is_rational, mat_proportional, matmul, matvec, primitive


@dataclass(frozen=True, eq=False)
class AffineMap:
    m: Mat3
    tri: TriangleCtx

    def __post_init__(self):
        m = tuple(tuple(self.tri(v) for v in row) for row in self.m)
        if all(is_rational(v) for row in m for v in row):
            flat = primitive([v for row in m for v in row])
            m = (flat[0:3], flat[3:6], flat[6:9])
        object.__setattr__(self, "m", m)
        if det3(m) == 0:
            raise ValueError("singular matrix does not define an affine map")
        sums = [m[0][j] + m[1][j] + m[2][j] for j in range(3)]
        if not (sums[0] == sums[1] == sums[2]):
            raise ValueError("matrix moves the line at infinity")

    def __call__(self, p: BaryPoint) -> BaryPoint:
        return apply(self, p)

    def __matmul__(self, other: AffineMap) -> AffineMap:
        return compose(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AffineMap):
            return NotImplemented
        return self.tri.same_as(other.tri) and mat_proportional(self.m, other.m)

    __hash__ = None

    @property
    def scale(self) -> FieldElem:
        """The common column sum; the factor l-infinity is multiplied by."""
        return self.m[0][0] + self.m[1][0] + self.m[2][0]

    def inverse(self) -> AffineMap:
        return AffineMap(adjugate(self.m), self.tri)

    def cartesian(self) -> tuple[tuple, tuple]:
        """(L, b) with the map acting on cartesian points as p -> L p + b."""
        tri = self.tri
        mc = matmul(matmul(tri.convA, self.m), tri.convAinv)
        inv = mc[2][2].inverse()
        L = ((mc[0][0] * inv, mc[0][1] * inv), (mc[1][0] * inv, mc[1][1] * inv))
        b = (mc[0][2] * inv, mc[1][2] * inv)
        return L, b


class MapKind(str, enum.Enum):
    IDENTITY = "identity"
    TRANSLATION = "translation"
    HOMOTHETY = "homothety"
    GENERAL = "general"


@dataclass(frozen=True)
class MapClass:
    kind: MapKind
    center: BaryPoint | None = None
    ratio: FieldElem | None = None
    displacement: BaryPoint | None = None
    displacement_norm2: FieldElem | None = None


def identity_map(tri: TriangleCtx) -> AffineMap:
    return AffineMap(identity3(), tri)


def from_cartesian_map(tri: TriangleCtx, L, b) -> AffineMap:
    """Barycentric matrix of p -> L p + b."""
    t = tri
    aff = ((t(L[0][0]), t(L[0][1]), t(b[0])), (t(L[1][0]), t(L[1][1]), t(b[1])), (t(0), t(0), t(1)))
    return AffineMap(matmul(matmul(tri.convAinv, aff), tri.convA), tri)


def map_from_triangles(
    tri: TriangleCtx, src: Sequence[BaryPoint], dst: Sequence[BaryPoint]
) -> AffineMap:
    """The unique affine map taking src[i] to dst[i] for i = 0, 1, 2."""
    for p in list(src) + list(dst):
        if p.is_ideal():
            raise IdealPoint(f"{p} is not an ordinary point")
    cols_s = [[tri(c) for c in p.normalized()] for p in src]
    cols_d = [[tri(c) for c in p.normalized()] for p in dst]
    S = tuple(tuple(cols_s[j][i] for j in range(3)) for i in range(3))
    D = tuple(tuple(cols_d[j][i] for j in range(3)) for i in range(3))
    if det3(S) == 0:
        raise CollinearTriple("source points are collinear")
    if det3(D) == 0:
        raise CollinearTriple("target points are collinear")
    return AffineMap(matmul(D, adjugate(S)), tri)


def complement_map(tri: TriangleCtx) -> AffineMap:
    return AffineMap(((0, 1, 1), (1, 0, 1), (1, 1, 0)), tri)


def anticomplement_map(tri: TriangleCtx) -> AffineMap:
    return AffineMap(((-1, 1, 1), (1, -1, 1), (1, 1, -1)), tri)


def compose(f: AffineMap, g: AffineMap) -> AffineMap:
    """f after g."""
    if not f.tri.same_as(g.tri):
        raise CtxMismatch("maps belong to different reference triangles")
    return AffineMap(matmul(f.m, g.m), f.tri)


def apply(f: AffineMap, p: BaryPoint) -> BaryPoint:
    return BaryPoint(*matvec(f.m, tuple(f.tri(c) for c in p)))


def det_ratio(f: AffineMap) -> FieldElem:
    """Signed area scaling factor of the map (1 for the identity)."""
    return det3(f.m) / f.scale**3


def classify(f: AffineMap) -> MapClass:
    tri = f.tri
    L, b = f.cartesian()
    (l00, l01), (l10, l11) = L
    if l01 != 0 or l10 != 0 or l00 != l11:
        return MapClass(MapKind.GENERAL)
    k = l00
    if k == 1:
        if b[0] == 0 and b[1] == 0:
            return MapClass(MapKind.IDENTITY)
        return MapClass(
            MapKind.TRANSLATION,
            displacement=direction_to_bary(tri, b[0], b[1]),
            displacement_norm2=b[0] * b[0] + b[1] * b[1],
        )
    inv = (1 - k).inverse()
    center = from_cartesian(tri, CartPoint(b[0] * inv, b[1] * inv))
    return MapClass(MapKind.HOMOTHETY, center=center, ratio=k)


def fixed_points(f: AffineMap) -> tuple[BaryPoint, ...]:
    """Ordinary fixed points: () for none, (Z,) when unique.

    Raises InfiniteFixedSet when a whole line (or the plane) is fixed.
    """
    ((l00, l01), (l10, l11)), (b0, b1) = f.cartesian()
    # (L - I) p = -b
    a00, a01, a10, a11 = l00 - 1, l01, l10, l11 - 1
    d = a00 * a11 - a01 * a10
    if d != 0:
        inv = d.inverse()
        u = (-b0 * a11 + b1 * a01) * inv
        v = (-a00 * b1 + a10 * b0) * inv
        return (from_cartesian(f.tri, CartPoint(u, v)),)
    # singular: consistent iff b lies in the column space of L - I
    if a00 == 0 and a01 == 0 and a10 == 0 and a11 == 0:
        if b0 == 0 and b1 == 0:
            raise InfiniteFixedSet("identity map fixes every point")
        return ()
    rows = [(a00, a01, b0), (a10, a11, b1)]
    pivot = rows[0] if (a00 != 0 or a01 != 0) else rows[1]
    other = rows[1] if pivot is rows[0] else rows[0]
    # other row is a multiple of pivot's coefficient part; compare augmented parts
    if pivot[0] != 0:
        k = other[0] / pivot[0]
    else:
        k = other[1] / pivot[1]
    if other[2] == k * pivot[2]:
        raise InfiniteFixedSet("map fixes a line pointwise")
    return ()


def vertex_images(f: AffineMap) -> tuple[BaryPoint, BaryPoint, BaryPoint]:
    return apply(f, VERTEX_A), apply(f, VERTEX_B), apply(f, VERTEX_C)
