"""Exact, certificate-producing checks that the nine-point circle touches the in- and excircles.

Everything is computed in towers of real quadratic fields over Q, so every
tangency and identity is checked with zero tolerance.
"""

from .affinemap import AffineMap, MapClass, MapKind, classify, det_ratio, fixed_points, map_from_triangles
from .barycentric import BaryLine, BaryPoint, CartPoint, TriangleCtx, from_cartesian, make_triangle, to_cartesian
from .cevian import CevianConfig, build_cevian_config, external_gergonne_point, gergonne_point, isotomic_conjugate
from .conics import Conic, TriangleMetrics, certify_tangency, compute_metrics, map_conic, ninepoint_circle
from .errors import FeucheckError, GeometryError, ParseError
from .exactfield import QQ, FieldElem, TowerCtx, adjoin_sqrt, approx, parse, sign_of, sqrt_in_tower
from .feuerbach import FeuerbachCertificate, build_phi, certify, feuerbach_point_from_sides, fixed_point_formula

__version__ = "0.1.0"

__all__ = [
    "AffineMap",
    "BaryLine",
    "BaryPoint",
    "CartPoint",
    "CevianConfig",
    "Conic",
    "FeucheckError",
    "FeuerbachCertificate",
    "FieldElem",
    "GeometryError",
    "MapClass",
    "MapKind",
    "ParseError",
    "QQ",
    "TowerCtx",
    "TriangleCtx",
    "TriangleMetrics",
    "adjoin_sqrt",
    "approx",
    "build_cevian_config",
    "build_phi",
    "certify",
    "certify_tangency",
    "classify",
    "compute_metrics",
    "det_ratio",
    "external_gergonne_point",
    "feuerbach_point_from_sides",
    "fixed_point_formula",
    "fixed_points",
    "from_cartesian",
    "gergonne_point",
    "isotomic_conjugate",
    "make_triangle",
    "map_conic",
    "map_from_triangles",
    "ninepoint_circle",
    "parse",
    "sign_of",
    "sqrt_in_tower",
    "to_cartesian",
]
