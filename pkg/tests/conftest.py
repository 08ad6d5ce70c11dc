"""Shared fixtures, strategies and oracles.

Expected values are written as sympy expressions and compared through
``same``, which converts a field element to sympy by evaluating its basis
expansion.  sympy never sees our arithmetic, only the final coefficients.
"""

from __future__ import annotations

from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import assume, strategies as st

from feucheck.barycentric import CartPoint, make_triangle
from feucheck.exactfield import parse

S13 = sp.sqrt(13)


def to_sympy(x) -> sp.Expr:
    if isinstance(x, (int, Fraction)):
        return sp.Rational(x.numerator, x.denominator) if isinstance(x, Fraction) else sp.Integer(x)
    ctx = x.ctx
    roots = [sp.sqrt(r if isinstance(r, int) else to_sympy(r)) for r in ctx.levels]
    total = sp.Integer(0)
    for i, c in enumerate(x.coefficients):
        if c == 0:
            continue
        term = sp.Rational(c.numerator, c.denominator)
        for t, root in enumerate(roots):
            if i >> t & 1:
                term *= root
        total += term
    return total


def same(x, expected) -> bool:
    """Exact comparison against a sympy expression (or a number)."""
    diff = to_sympy(x) - sp.sympify(expected)
    return sp.simplify(sp.radsimp(diff)) == 0


def same_point(p, expected_xy) -> bool:
    return same(p.u, expected_xy[0]) and same(p.v, expected_xy[1])


def proportional_sym(values, expected) -> bool:
    """Projective equality of a triple against sympy expressions."""
    vs = [to_sympy(v) for v in values]
    es = [sp.sympify(e) for e in expected]
    return all(sp.simplify(sp.radsimp(vs[i] * es[j] - vs[j] * es[i])) == 0 for i in range(3) for j in range(i + 1, 3))


def triangle(*coords):
    """Triangle from six coordinates given as ints, Fractions or grammar strings."""
    values = [parse(c) if isinstance(c, str) else c for c in coords]
    pts = [CartPoint(values[i], values[i + 1]) for i in (0, 2, 4)]
    return make_triangle(*pts)


@pytest.fixture(scope="session")
def worked():
    """The triangle A=(4,0), B=(0,3), C=(-2,0) with sides sqrt(13), 6, 5."""
    return triangle(4, 0, 0, 3, -2, 0)


@pytest.fixture(scope="session")
def right345():
    """A=(0,0), B=(4,0), C=(0,3): a=5, b=3, c=4."""
    return triangle(0, 0, 4, 0, 0, 3)


small_rationals = st.builds(
    Fraction, st.integers(min_value=-12, max_value=12), st.integers(min_value=1, max_value=4)
)


@st.composite
def rational_triangles(draw):
    """Non-degenerate triangles with small rational vertices (equilateral is impossible over Q)."""
    (au, av), (bu, bv), (cu, cv) = [(draw(small_rationals), draw(small_rationals)) for _ in range(3)]
    assume((bu - au) * (cv - av) - (bv - av) * (cu - au) != 0)
    return triangle(au, av, bu, bv, cu, cv)


@st.composite
def isosceles_triangles(draw):
    """Apex on the perpendicular bisector of the base, so |CA| = |CB|."""
    h = draw(small_rationals.filter(lambda q: q != 0))
    w = draw(small_rationals.filter(lambda q: q != 0))
    m = draw(small_rationals)
    return triangle(m - w, 0, m + w, 0, m, h)


# -- acceptance reporting ------------------------------------------------------

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[criterion] = (ok, detail)
    print(f"criterion {criterion}: {'PASS' if ok else 'FAIL'} - {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
