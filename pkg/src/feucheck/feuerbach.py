"""Certified tangency of the nine-point circle with the incircle and excircles via Phi = T1 K^-1 T2 K^-1.

For the incircle P is the Gergonne point; for the excircle opposite a vertex
P is the matching external Gergonne point.  In each case Phi must be a
homothety taking the nine-point circle to the target circle, and its center
Z is computed three independent ways.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .affinemap import AffineMap, MapClass, MapKind, anticomplement_map, classify, complement_map, det_ratio, fixed_points
from .barycentric import BaryPoint, CartPoint, TriangleCtx, dist2, to_cartesian
from .cevian import CevianConfig, build_cevian_config, external_gergonne_point, gergonne_point, signed_sides
from .conics import (
    Conic,
    TangencyCertificate,
    TriangleMetrics,
    certify_tangency,
    circumcircle,
    compute_metrics,
    excircle,
    incircle,
    map_conic,
    ninepoint_circle,
    ninepoint_conic,
)
from .errors import CentroidDegenerate, CertificationError, EquilateralTriangle
from .exactfield import FieldElem
from .linalg import mat_proportional, matadd, primitive, scale

TARGETS = {"incircle": None, "excircle_A": "A", "excircle_B": "B", "excircle_C": "C"}


def build_phi(tri: TriangleCtx, P: BaryPoint, config: CevianConfig | None = None) -> AffineMap:
    cfg = config or build_cevian_config(tri, P)
    kinv = anticomplement_map(tri)
    return cfg.T1 @ (kinv @ (cfg.T2 @ kinv))


def fixed_point_formula(P: BaryPoint, config: CevianConfig | None = None) -> BaryPoint:
    """(x(y-z)^2, y(x-z)^2, z(x-y)^2); with ``config``, also checks T1 K^-1 and T2 K^-1 fix it."""
    x, y, z = P
    coords = (x * (y - z) ** 2, y * (x - z) ** 2, z * (x - y) ** 2)
    if all(c == 0 for c in coords):
        raise CentroidDegenerate("P is the centroid; the fixed-point formula vanishes")
    Z = BaryPoint(*primitive(coords))
    if config is not None:
        kinv = anticomplement_map(config.tri)
        if (config.T1 @ kinv)(Z) != Z or (config.T2 @ kinv)(Z) != Z:
            raise CertificationError("closed-form Z is not fixed by T1 K^-1 and T2 K^-1")
    return Z


def feuerbach_point_from_sides(metrics: TriangleMetrics, vertex: str | None = None) -> BaryPoint:
    """(xi, eta, zeta) = ((b-c)^2 (b+c-a), (a-c)^2 (a+c-b), (a-b)^2 (a+b-c)).

    For an excircle the side opposite ``vertex`` enters with a minus sign.
    """
    a, b, c = signed_sides(metrics.tri, vertex)
    xi = (b - c) ** 2 * (b + c - a)
    eta = (a - c) ** 2 * (a + c - b)
    zeta = (a - b) ** 2 * (a + b - c)
    if xi == 0 and eta == 0 and zeta == 0:
        raise EquilateralTriangle("equilateral: nine-point circle coincides with the incircle")
    return BaryPoint(xi, eta, zeta)


def contact_point(metrics: TriangleMetrics, vertex: str | None = None) -> BaryPoint:
    if vertex is None:
        return gergonne_point(metrics.tri)
    return external_gergonne_point(metrics.tri, vertex)


@dataclass(eq=False)
class CircleRecord:
    target: str
    vertex: str | None
    P: BaryPoint
    config: CevianConfig
    phi: AffineMap
    classification: MapClass
    circle: Conic
    radius: FieldElem
    center: BaryPoint
    Z: BaryPoint
    Z_cartesian: CartPoint
    tangency: TangencyCertificate
    contact: str
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.tangency.ok and all(self.checks.values())


@dataclass(eq=False)
class FeuerbachCertificate:
    tri: TriangleCtx
    metrics: TriangleMetrics
    ninepoint: Conic
    records: dict[str, CircleRecord]
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def all_exact(self) -> bool:
        return all(self.checks.values()) and all(r.ok for r in self.records.values())


def _contact_kind(metrics: TriangleMetrics, center: BaryPoint, radius: FieldElem) -> str:
    tri = metrics.tri
    d2 = dist2(to_cartesian(tri, metrics.ninepoint_center), to_cartesian(tri, center))
    if d2 == (metrics.r_n - radius) ** 2:
        return "internal"
    if d2 == (metrics.r_n + radius) ** 2:
        return "external"
    return "none"


def certify_circle(
    metrics: TriangleMetrics, ninepoint: Conic, target: str = "incircle", check: bool = True
) -> CircleRecord:
    tri = metrics.tri
    vertex = TARGETS[target]
    P = contact_point(metrics, vertex)
    cfg = build_cevian_config(tri, P, check=check)
    phi = build_phi(tri, P, cfg)
    cls = classify(phi)
    circle = incircle(tri, metrics, check=check) if vertex is None else excircle(tri, vertex, metrics, check=check)

    Z = fixed_point_formula(P, cfg if check else None)
    fixed = fixed_points(phi)
    from_sides = feuerbach_point_from_sides(metrics, vertex)
    Zc = to_cartesian(tri, Z)
    tangency = certify_tangency(ninepoint, circle, Z)
    radius = metrics.radius(vertex)
    center = metrics.center(vertex)
    contact = _contact_kind(metrics, center, radius)

    checks = {
        "homothety": cls.kind is MapKind.HOMOTHETY,
        "center_is_Z": cls.center == Z if cls.center is not None else False,
        "fixed_point_linear_solve": len(fixed) == 1 and fixed[0] == Z,
        "fixed_point_from_sides": from_sides == Z,
        "phi_maps_ninepoint_to_circle": map_conic(phi, ninepoint) == circle,
        "phi_maps_ninepoint_center_to_center": phi(metrics.ninepoint_center) == center,
        "det_ratio_is_radius_ratio_squared": det_ratio(phi) == (radius / metrics.r_n) ** 2,
        "ratio_squared_is_det_ratio": cls.ratio is not None and cls.ratio**2 == det_ratio(phi),
        "distance_certificate": contact != "none",
    }
    if check:
        x, y, z = cfg.P
        K = complement_map(tri)
        checks["T1_plus_T2_is_multiple_of_K"] = mat_proportional(
            matadd(cfg.T1.m, cfg.T2.m), scale(K.m, (x + y) * (x + z) * (y + z))
        )
        checks["T1T2_homothety"] = classify(cfg.T1 @ cfg.T2).kind is MapKind.HOMOTHETY
        comm = cfg.T2 @ cfg.T1 @ cfg.T2.inverse() @ cfg.T1.inverse()
        checks["commutator_translation"] = classify(comm).kind in (MapKind.TRANSLATION, MapKind.IDENTITY)
        checks["Z_on_ninepoint_conic"] = ninepoint_conic(tri, P).contains(Z)
    return CircleRecord(
        target, vertex, P, cfg, phi, cls, circle, radius, center, Z, Zc, tangency, contact, checks
    )


def certify(tri: TriangleCtx, targets=tuple(TARGETS), check: bool = True) -> FeuerbachCertificate:
    """Certify tangency of the nine-point circle with the requested circles.

    Raises EquilateralTriangle up front: the nine-point circle and incircle
    then coincide and cannot be tangent.
    """
    metrics = compute_metrics(tri)
    if metrics.is_equilateral():
        raise EquilateralTriangle("equilateral: nine-point circle coincides with the incircle")
    N = ninepoint_circle(tri, metrics, check=check)
    records = {t: certify_circle(metrics, N, t, check=check) for t in targets}
    kinv = anticomplement_map(tri)
    checks = {
        "anticomplement_of_ninepoint_center_is_circumcenter": kinv(metrics.ninepoint_center) == metrics.circumcenter,
        "anticomplement_of_ninepoint_circle_is_circumcircle": map_conic(kinv, N) == circumcircle(tri),
    }
    return FeuerbachCertificate(tri, metrics, N, records, checks)
