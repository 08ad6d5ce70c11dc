from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from feucheck.errors import AlreadySquare, CtxMismatch, DivisionByZero, NegativeRadicand, ParseError
from feucheck.exactfield import QQ, FieldElem, adjoin_sqrt, approx, parse, parse_many, sign_of, sqrt_in_tower

from conftest import same, to_sympy

Q13, R13 = adjoin_sqrt(QQ, 13)
Q5, R5 = adjoin_sqrt(QQ, 5)


def build_towers():
    t2, _ = adjoin_sqrt(QQ, 2)
    t23, _ = adjoin_sqrt(t2, 3)
    t235, _ = adjoin_sqrt(t23, 5)
    nested, _ = adjoin_sqrt(t2, t2(2) + t2.gen)  # sqrt(2 + sqrt 2)
    t23n, _ = adjoin_sqrt(t23, t23(5) + t23.root(1))  # sqrt(5 + sqrt 3)
    return {"Q": QQ, "Q13": Q13, "Q2Q3": t23, "Q2Q3Q5": t235, "nested4": nested, "nested8": t23n}


TOWERS = build_towers()


def mp_value(x) -> mpmath.mpf:
    """Independent evaluation: mpmath square roots of the radicands, no Decimal code."""
    if isinstance(x, (int, Fraction)):
        return mpmath.mpf(x.numerator) / x.denominator if isinstance(x, Fraction) else mpmath.mpf(x)
    roots = [mpmath.sqrt(mpmath.mpf(r) if isinstance(r, int) else mp_value(r)) for r in x.ctx.levels]
    total = mpmath.mpf(0)
    for i, c in enumerate(x.coefficients):
        term = mpmath.mpf(c.numerator) / c.denominator
        for t, root in enumerate(roots):
            if i >> t & 1:
                term *= root
        total += term
    return total


def elements(ctx, lo=-9, hi=9):
    coeff = st.integers(min_value=lo, max_value=hi)
    return st.builds(
        lambda nums, den: FieldElem(ctx, nums, den),
        st.lists(coeff, min_size=ctx.dim, max_size=ctx.dim),
        st.integers(min_value=1, max_value=7),
    )


tower_and_elements = st.sampled_from(sorted(TOWERS)).flatmap(
    lambda name: st.tuples(st.just(TOWERS[name]), st.lists(elements(TOWERS[name]), min_size=3, max_size=3))
)


class TestExamples:
    def test_rational_sum(self):
        assert QQ(Fraction(1, 2)) + QQ(Fraction(1, 3)) == Fraction(5, 6)

    def test_defining_relation(self):
        assert R13 * R13 == 13

    def test_inverse_by_conjugate(self):
        x = 1 / (R13 - 3)
        assert x == (3 + R13) / 4
        assert x * (R13 - 3) == 1
        assert same(x, "(3+sqrt(13))/4")

    def test_signs(self):
        assert sign_of(QQ(0)) == 0
        assert sign_of(R13 - 3) == 1
        assert sign_of(11 - 3 * R13) == 1
        assert sign_of(3 * R13 - 11) == -1

    def test_sqrt_rational(self):
        assert sqrt_in_tower(QQ(25)) == 5
        assert sqrt_in_tower(QQ(13)) is None

    def test_sqrt_nested(self):
        root = sqrt_in_tower(14 + 6 * R5)
        assert root == 3 + R5
        assert root * root == 14 + 6 * R5

    def test_sqrt_negative(self):
        with pytest.raises(NegativeRadicand):
            sqrt_in_tower(QQ(-4))

    def test_adjoin_13(self):
        assert len(Q13.levels) == 1 and Q13.dim == 2
        assert str(R13) == "sqrt(13)"

    def test_adjoin_then_extract(self):
        t, r = adjoin_sqrt(QQ, 2)
        assert sqrt_in_tower(t(2)) == r

    def test_adjoin_strips_square_factor(self):
        t, r = adjoin_sqrt(QQ, 52)
        assert t.levels == (13,)
        assert str(r) == "2*sqrt(13)"

    def test_dimension_four_basis(self):
        t, r3 = adjoin_sqrt(Q13, 3)
        assert t.dim == 4
        basis = [t(1), t(R13), r3, t(R13) * r3]
        assert [str(b) for b in basis] == ["1", "sqrt(13)", "sqrt(3)", "sqrt(39)"]
        # distinct canonical strings that re-parse to the same elements
        for b in basis:
            assert t(parse(str(b), t)) == b

    def test_adjoin_errors(self):
        with pytest.raises(AlreadySquare):
            adjoin_sqrt(QQ, 9)
        with pytest.raises(NegativeRadicand):
            adjoin_sqrt(QQ, -2)

    def test_approx(self):
        assert approx(QQ(Fraction(5, 6)), 4) == "0.8333"
        assert approx((R13 - 3) / 2, 6) == "0.302776"
        assert approx(QQ(0), 3) == "0.000"
        assert approx(-(R13 - 3) / 2, 6) == "-0.302776"

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZero):
            R13 / (R13 - R13)

    def test_ctx_mismatch(self):
        with pytest.raises(CtxMismatch):
            R13 + R5
        with pytest.raises(CtxMismatch):
            R13 == R5

    def test_lift(self):
        t, _ = adjoin_sqrt(Q13, 3)
        assert t(R13) * t(R13) == 13


class TestGrammar:
    def test_render(self):
        z = (-79 + 5 * R13) / 102
        assert str(z) == "(-79+5*sqrt(13))/102"
        assert str(Q13(Fraction(-3, 4))) == "-3/4"

    def test_parse_round_trip(self):
        z = parse("(-79+5*sqrt(13))/102")
        assert z.ctx == Q13
        assert z == (-79 + 5 * R13) / 102

    def test_parse_grows_tower(self):
        ctx, (x, y) = parse_many(["sqrt(2)", "sqrt(3)/2"])
        assert ctx.dim == 4
        assert x * x == 2 and y * y == Fraction(3, 4)

    def test_parse_composite_radicand(self):
        ctx, (x, y, z) = parse_many(["sqrt(2)", "sqrt(3)", "sqrt(6)"])
        assert ctx.dim == 4
        assert z == x * y

    def test_parse_nested(self):
        x = parse("sqrt(2+sqrt(2))")
        assert x * x == 2 + x.ctx(parse("sqrt(2)"))
        assert parse(str(x), x.ctx) == x

    @pytest.mark.parametrize(
        "text, token, position",
        [("1/2x", "x", 3), ("sqrt(-2)", "sqrt", 0), ("(1+2", "", 4), ("", "", 0), ("3 / 0", "/", 2)],
    )
    def test_parse_errors(self, text, token, position):
        with pytest.raises(ParseError) as info:
            parse(text)
        assert info.value.token == token
        assert info.value.position == position


class TestProperties:
    @given(tower_and_elements)
    def test_ring_axioms(self, data):
        _, (x, y, z) = data
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x + y == y + x and x * y == y * x
        assert x - x == 0

    @given(tower_and_elements)
    def test_inverse(self, data):
        _, (x, _, _) = data
        if x:
            assert x * x.inverse() == 1

    @given(tower_and_elements)
    def test_order(self, data):
        _, (x, y, _) = data
        assert sign_of(x * y) == sign_of(x) * sign_of(y)
        if sign_of(x) > 0 and sign_of(y) > 0:
            assert sign_of(x + y) == 1
        assert (x < y) + (x == y) + (x > y) == 1

    @given(tower_and_elements)
    def test_sign_matches_mpmath(self, data):
        _, (x, _, _) = data
        with mpmath.workdps(60):
            v = mp_value(x)
        assert sign_of(x) == (v > 0) - (v < 0)
        assert abs(float(x) - float(v)) <= 1e-9 * max(1.0, abs(float(v)))

    @given(tower_and_elements)
    def test_square_round_trip(self, data):
        _, (x, _, _) = data
        root = sqrt_in_tower(x * x)
        assert root == abs(x)

    @given(tower_and_elements)
    def test_sqrt_returns_a_root(self, data):
        _, (x, _, _) = data
        if x.sign() >= 0:
            root = sqrt_in_tower(x)
            if root is not None:
                assert root * root == x and root.sign() >= 0

    @settings(max_examples=50)
    @given(tower_and_elements)
    def test_render_parse_round_trip(self, data):
        ctx, (x, _, _) = data
        assert parse(str(x), ctx) == x

    @given(tower_and_elements, st.integers(min_value=1, max_value=15))
    def test_approx_is_correctly_rounded(self, data, digits):
        _, (x, _, _) = data
        text = approx(x, digits)
        with mpmath.workdps(80):
            v = mp_value(x)
            assert abs(mpmath.mpf(text) - v) <= mpmath.mpf(10) ** (-digits) / 2 + mpmath.mpf(10) ** -70

    @given(elements(Q13))
    def test_sympy_agrees_on_products(self, x):
        y = x * (R13 - 3)
        assert same(y, to_sympy(x) * (to_sympy(R13) - 3))
