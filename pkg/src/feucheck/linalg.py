"""3x3 matrix helpers over any exact field (ints, Fractions, FieldElems).

Matrices are tuples of row tuples.  Nothing here ever produces a float.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .exactfield import FieldElem

Mat3 = tuple[tuple, tuple, tuple]


def div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b)
    return a / b


def is_rational(v) -> bool:
    return isinstance(v, (int, Fraction)) or (isinstance(v, FieldElem) and v.is_rational())


def as_fraction(v) -> Fraction:
    return v.to_fraction() if isinstance(v, FieldElem) else Fraction(v)


def identity3() -> Mat3:
    return ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def mat(rows: Sequence[Sequence]) -> Mat3:
    return tuple(tuple(r) for r in rows)


def transpose(m: Mat3) -> Mat3:
    return tuple(zip(*m))


def matmul(a: Mat3, b: Mat3) -> Mat3:
    bt = transpose(b)
    return tuple(tuple(row[0] * col[0] + row[1] * col[1] + row[2] * col[2] for col in bt) for row in a)


def matvec(m: Mat3, v: Sequence) -> tuple:
    return tuple(row[0] * v[0] + row[1] * v[1] + row[2] * v[2] for row in m)


def vecmat(v: Sequence, m: Mat3) -> tuple:
    return tuple(v[0] * m[0][j] + v[1] * m[1][j] + v[2] * m[2][j] for j in range(3))


def matadd(a: Mat3, b: Mat3) -> Mat3:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def scale(m: Mat3, k) -> Mat3:
    return tuple(tuple(x * k for x in row) for row in m)


def det3(m: Mat3):
    (a, b, c), (d, e, f), (g, h, i) = m
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def adjugate(m: Mat3) -> Mat3:
    (a, b, c), (d, e, f), (g, h, i) = m
    return (
        (e * i - f * h, c * h - b * i, b * f - c * e),
        (f * g - d * i, a * i - c * g, c * d - a * f),
        (d * h - e * g, b * g - a * h, a * e - b * d),
    )


def inv3(m: Mat3) -> Mat3:
    d = det3(m)
    if d == 0:
        raise ZeroDivisionError("singular matrix")
    adj = adjugate(m)
    if isinstance(d, FieldElem):
        d = d.inverse()
        return scale(adj, d)
    return tuple(tuple(div(x, d) for x in row) for row in adj)


def cross(p: Sequence, q: Sequence) -> tuple:
    return (
        p[1] * q[2] - p[2] * q[1],
        p[2] * q[0] - p[0] * q[2],
        p[0] * q[1] - p[1] * q[0],
    )


def dot(p: Sequence, q: Sequence):
    return p[0] * q[0] + p[1] * q[1] + p[2] * q[2]


def proportional(u: Sequence, v: Sequence) -> bool:
    """u = lambda*v for some nonzero lambda (both vectors nonzero)."""
    k = next((i for i, x in enumerate(u) if x != 0), None)
    if k is None or v[k] == 0:
        return False
    uk, vk = u[k], v[k]
    return all(x * vk == y * uk for x, y in zip(u, v))


def flatten(m: Mat3) -> tuple:
    return tuple(x for row in m for x in row)


def mat_proportional(a: Mat3, b: Mat3) -> bool:
    return proportional(flatten(a), flatten(b))


def primitive(values: Sequence) -> tuple:
    """Scale rational entries to coprime integers by a positive factor.

    Irrational vectors are returned unchanged, as are all-zero ones.
    """
    if not all(is_rational(v) for v in values):
        return tuple(values)
    fr = [as_fraction(v) for v in values]
    if not any(fr):
        return tuple(values)
    lcm = math.lcm(*(f.denominator for f in fr))
    ints = [f.numerator * (lcm // f.denominator) for f in fr]
    g = math.gcd(*ints)
    out = [n // g for n in ints]
    return tuple(_like(v, n) for v, n in zip(values, out))


def _like(v, n: int):
    return v.ctx(n) if isinstance(v, FieldElem) else n
