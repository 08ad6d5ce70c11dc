"""Exact arithmetic in towers Q(sqrt r1)(sqrt r2)...(sqrt rk) of real fields.

Every adjoined root is taken positive, which fixes one real embedding; the
ordering comes from a recursive sign algorithm and never from floating point.

An element of a k-level tower is stored as a dense vector of 2**k rationals
over the basis of radical monomials: bit j of a basis index says whether
sqrt(r_j) is a factor.  Internally the vector is kept as integer numerators
over one positive common denominator, in lowest terms.
"""

from __future__ import annotations

import math
import re
from decimal import ROUND_FLOOR, Decimal, localcontext
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import AlreadySquare, CtxMismatch, DivisionByZero, NegativeRadicand, ParseError

Rational = Fraction
Number = Union[int, Fraction, "FieldElem"]


class TowerCtx:
    """An immutable tower of quadratic extensions over the rationals.

    ``levels[j]`` is the radicand of level j: a square-free integer when it is
    rational, otherwise a :class:`FieldElem` of the tower made of the first j
    levels.  Contexts compare structurally, so two independently built copies
    of Q(sqrt 13) interoperate.
    """

    __slots__ = ("levels", "parent", "dim", "_table", "_hash", "_labels", "_basis_cache", "_gen")

    def __init__(self) -> None:
        self.levels: tuple = ()
        self.parent: TowerCtx | None = None
        self.dim = 1
        self._finish()

    def _extend(self, radicand) -> TowerCtx:
        new = TowerCtx.__new__(TowerCtx)
        new.levels = self.levels + (radicand,)
        new.parent = self
        new.dim = self.dim * 2
        new._finish()
        return new

    def _finish(self) -> None:
        self._hash = None
        self._labels = None
        self._basis_cache = {}
        self._gen = None
        if all(isinstance(r, int) for r in self.levels):
            k = len(self.levels)
            table = []
            for i in range(self.dim):
                row = []
                for j in range(self.dim):
                    f = 1
                    common = i & j
                    for t in range(k):
                        if common >> t & 1:
                            f *= self.levels[t]
                    row.append((i ^ j, f))
                table.append(row)
            self._table = table
        else:
            self._table = None

    @property
    def depth(self) -> int:
        return len(self.levels)

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, TowerCtx):
            return NotImplemented
        return self.levels == other.levels

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(r if isinstance(r, int) else (r.nums, r.den) for r in self.levels))
        return self._hash

    def __repr__(self) -> str:
        if not self.levels:
            return "TowerCtx(Q)"
        return "TowerCtx(Q" + "".join(f"(sqrt({r}))" for r in self.levels) + ")"

    def is_prefix_of(self, other: TowerCtx) -> bool:
        n = len(self.levels)
        return n <= len(other.levels) and self.levels == other.levels[:n]

    def prefix(self, n: int) -> TowerCtx:
        ctx = self
        while len(ctx.levels) > n:
            ctx = ctx.parent
        return ctx

    def __call__(self, value: Number) -> FieldElem:
        """Coerce an int, Fraction or lower-tower element into this tower."""
        if isinstance(value, FieldElem):
            if value.ctx is self or value.ctx == self:
                return value
            return self.lift(value)
        if isinstance(value, int):
            return FieldElem(self, (value,) + (0,) * (self.dim - 1), 1)
        if isinstance(value, Fraction):
            return FieldElem(self, (value.numerator,) + (0,) * (self.dim - 1), value.denominator)
        raise TypeError(f"cannot coerce {type(value).__name__} into a tower")

    def lift(self, x: FieldElem) -> FieldElem:
        """Embed an element of a prefix tower; raises CtxMismatch otherwise."""
        if not x.ctx.is_prefix_of(self):
            raise CtxMismatch(f"{x.ctx!r} is not a subfield of {self!r}")
        return FieldElem(self, x.nums + (0,) * (self.dim - x.ctx.dim), x.den, _reduced=True)

    def zero(self) -> FieldElem:
        return self(0)

    def one(self) -> FieldElem:
        return self(1)

    def root(self, level: int) -> FieldElem:
        """The positive square root of the radicand of ``level``."""
        nums = [0] * self.dim
        nums[1 << level] = 1
        return FieldElem(self, tuple(nums), 1, _reduced=True)

    @property
    def gen(self) -> FieldElem:
        if self._gen is None:
            self._gen = self.root(len(self.levels) - 1)
        return self._gen

    def generators(self) -> list[str]:
        """The adjoined roots in order, e.g. ['sqrt(13)', 'sqrt(3)']."""
        return [f"sqrt({r})" for r in self.levels]

    def labels(self) -> list[str]:
        if self._labels is None:
            labels = []
            k = len(self.levels)
            for i in range(self.dim):
                bits = [self.levels[t] for t in range(k) if i >> t & 1]
                if not bits:
                    labels.append("")
                elif all(isinstance(r, int) for r in bits):
                    labels.append(f"sqrt({math.prod(bits)})")
                else:
                    labels.append("*".join(f"sqrt({r})" for r in bits))
            self._labels = labels
        return self._labels

    def basis_values(self, prec: int) -> list[Decimal]:
        cached = self._basis_cache.get(prec)
        if cached is not None:
            return cached
        with localcontext() as dc:
            dc.prec = prec
            roots = []
            for r in self.levels:
                v = Decimal(r) if isinstance(r, int) else r._decimal(prec)
                roots.append(v.sqrt())
            values = []
            for i in range(self.dim):
                v = Decimal(1)
                for t, root in enumerate(roots):
                    if i >> t & 1:
                        v *= root
                values.append(v)
        self._basis_cache[prec] = values
        return values


QQ = TowerCtx()


def _combine(ctx: TowerCtx, a: FieldElem, b: FieldElem) -> FieldElem:
    """a + b*sqrt(top radicand), with a and b in ``ctx.parent``."""
    d = a.den * b.den // math.gcd(a.den, b.den)
    fa, fb = d // a.den, d // b.den
    return FieldElem(ctx, tuple(n * fa for n in a.nums) + tuple(n * fb for n in b.nums), d)


class FieldElem:
    """An immutable element of a :class:`TowerCtx`."""

    __slots__ = ("ctx", "nums", "den")

    def __init__(self, ctx: TowerCtx, nums: Sequence[int], den: int = 1, _reduced: bool = False):
        if not _reduced:
            if den == 0:
                raise DivisionByZero("zero denominator")
            g = math.gcd(den, *nums)
            if den < 0:
                g = -g
            if g != 1:
                nums = tuple(n // g for n in nums)
                den //= g
        self.ctx = ctx
        self.nums = tuple(nums)
        self.den = den

    # -- structure --------------------------------------------------------

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(n, self.den) for n in self.nums)

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.nums[0], self.den)

    def split(self) -> tuple[FieldElem, FieldElem]:
        """(a, b) in the parent tower with self = a + b*sqrt(top radicand)."""
        parent = self.ctx.parent
        if parent is None:
            raise ValueError("the rationals have no top level to split")
        h = parent.dim
        return FieldElem(parent, self.nums[:h], self.den), FieldElem(parent, self.nums[h:], self.den)

    def _other(self, other) -> FieldElem:
        if isinstance(other, FieldElem):
            if other.ctx is self.ctx or other.ctx == self.ctx:
                return other
            raise CtxMismatch(f"{self.ctx!r} vs {other.ctx!r}; lift explicitly")
        if isinstance(other, (int, Fraction)):
            return self.ctx(other)
        return NotImplemented

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return FieldElem(self.ctx, tuple(p + q for p, q in zip(self.nums, o.nums)), self.den)
        return FieldElem(
            self.ctx,
            tuple(p * o.den + q * self.den for p, q in zip(self.nums, o.nums)),
            self.den * o.den,
        )

    __radd__ = __add__

    def __neg__(self) -> FieldElem:
        return FieldElem(self.ctx, tuple(-n for n in self.nums), self.den, _reduced=True)

    def __pos__(self) -> FieldElem:
        return self

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return FieldElem(self.ctx, tuple(n * other for n in self.nums), self.den)
        o = self._other(other)
        if o is NotImplemented:
            return o
        ctx = self.ctx
        if o.is_rational():
            c = o.nums[0]
            return FieldElem(ctx, tuple(n * c for n in self.nums), self.den * o.den)
        if self.is_rational():
            c = self.nums[0]
            return FieldElem(ctx, tuple(n * c for n in o.nums), self.den * o.den)
        table = ctx._table
        if table is not None:
            out = [0] * ctx.dim
            ynums = [(j, q) for j, q in enumerate(o.nums) if q]
            for i, p in enumerate(self.nums):
                if p:
                    row = table[i]
                    for j, q in ynums:
                        k, f = row[j]
                        out[k] += p * q * f
            return FieldElem(ctx, out, self.den * o.den)
        a1, b1 = self.split()
        a2, b2 = o.split()
        r = ctx.levels[-1]
        return _combine(ctx, a1 * a2 + b1 * b2 * r, a1 * b2 + a2 * b1)

    __rmul__ = __mul__

    def inverse(self) -> FieldElem:
        if not any(self.nums):
            raise DivisionByZero("inverse of zero")
        if self.is_rational():
            n = self.nums[0]
            return self.ctx(Fraction(self.den, n))
        a, b = self.split()
        if not any(b.nums):
            return self.ctx.lift(a.inverse())
        norm = a * a - b * b * self.ctx.levels[-1]
        inv = norm.inverse()
        return _combine(self.ctx, a * inv, -(b * inv))

    def __truediv__(self, other):
        if isinstance(other, int):
            if other == 0:
                raise DivisionByZero("division by zero")
            return FieldElem(self.ctx, self.nums, self.den * other)
        o = self._other(other)
        if o is NotImplemented:
            return o
        if o.is_rational():
            if not o.nums[0]:
                raise DivisionByZero("division by zero")
            return FieldElem(self.ctx, tuple(n * o.den for n in self.nums), self.den * o.nums[0])
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int) -> FieldElem:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ctx.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- order ------------------------------------------------------------

    def sign(self) -> int:
        """Exact sign under the embedding with every adjoined root positive."""
        nums = self.nums
        if self.ctx.dim == 1 or not any(nums[1:]):
            return (nums[0] > 0) - (nums[0] < 0)
        a, b = self.split()
        sb = b.sign()
        if sb == 0:
            return a.sign()
        sa = a.sign()
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: |a| vs |b|*sqrt(r)
        return sa * (a * a - b * b * self.ctx.levels[-1]).sign()

    def _cmp(self, other) -> int:
        o = self._other(other)
        if o is NotImplemented:
            raise TypeError(f"cannot compare FieldElem with {type(other).__name__}")
        return (self - o).sign()

    def __lt__(self, other) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other) -> bool:
        return self._cmp(other) >= 0

    def __abs__(self) -> FieldElem:
        return -self if self.sign() < 0 else self

    def __bool__(self) -> bool:
        return any(self.nums)

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElem):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise CtxMismatch(f"{self.ctx!r} vs {other.ctx!r}; lift explicitly")
            return self.nums == other.nums and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.nums[0], self.den) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(Fraction(self.nums[0], self.den))
        return hash((self.nums, self.den))

    # -- square roots -----------------------------------------------------

    def sqrt(self) -> FieldElem | None:
        """The non-negative square root if it lies in this tower, else None."""
        if self.sign() < 0:
            raise NegativeRadicand(f"sqrt of negative element {self}")
        return _sqrt(self)

    # -- rendering --------------------------------------------------------

    def __str__(self) -> str:
        labels = self.ctx.labels()
        terms = []
        for n, label in zip(self.nums, labels):
            if not n:
                continue
            if not label:
                terms.append(str(n))
            elif n == 1:
                terms.append(label)
            elif n == -1:
                terms.append("-" + label)
            else:
                terms.append(f"{n}*{label}")
        if not terms:
            return "0"
        num = terms[0] + "".join(t if t.startswith("-") else "+" + t for t in terms[1:])
        if self.den == 1:
            return num
        if len(terms) == 1:
            return f"{num}/{self.den}"
        return f"({num})/{self.den}"

    def __repr__(self) -> str:
        return f"FieldElem({self})"

    def _decimal(self, prec: int) -> Decimal:
        values = self.ctx.basis_values(prec)
        with localcontext() as dc:
            dc.prec = prec
            total = Decimal(0)
            for n, v in zip(self.nums, values):
                if n:
                    total += Decimal(n) * v
            return total / Decimal(self.den)

    def __float__(self) -> float:
        return float(self._decimal(40))


def _perfect_square_fraction(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def _sqrt(x: FieldElem) -> FieldElem | None:
    s = x.sign()
    if s < 0:
        return None
    ctx = x.ctx
    if s == 0:
        return x
    if x.is_rational():
        q = _perfect_square_fraction(x.to_fraction())
        if q is not None:
            return ctx(q)
    if ctx.dim == 1:
        return None
    a, b = x.split()
    r = ctx.levels[-1]
    if not b:
        y = _sqrt(a)
        if y is not None:
            return ctx.lift(y)
        v = _sqrt(a / r)
        if v is not None:
            return _combine(ctx, a.ctx.zero(), v)
        return None
    delta = _sqrt(a * a - b * b * r)
    if delta is None:
        return None
    for u2 in ((a + delta) / 2, (a - delta) / 2):
        u = _sqrt(u2)
        if u is not None and u:
            y = _combine(ctx, u, b / (2 * u))
            if y * y == x:
                return y if y.sign() >= 0 else -y
    return None


def _square_split(n: int) -> tuple[int, int]:
    """n = m*m*s with s square-free as far as trial division can tell."""
    m, s = 1, 1
    p = 2
    while p * p <= n and p < 10_000:
        while n % (p * p) == 0:
            n //= p * p
            m *= p
        if n % p == 0:
            n //= p
            s *= p
        p += 1 if p == 2 else 2
    r = math.isqrt(n)
    if r * r == n:
        m *= r
    else:
        s *= n
    return m, s


def sign_of(x: Number) -> int:
    if isinstance(x, FieldElem):
        return x.sign()
    return (x > 0) - (x < 0)


def sqrt_in_tower(x: FieldElem) -> FieldElem | None:
    return x.sqrt()


def adjoin_sqrt(ctx: TowerCtx, x: Number) -> tuple[TowerCtx, FieldElem]:
    """Extend ``ctx`` by sqrt(x); returns the new tower and sqrt(x) in it.

    Rational radicands are reduced to square-free integers first, so asking
    for sqrt(52) adjoins sqrt(13) and returns 2*sqrt(13).
    """
    x = ctx(x)
    s = x.sign()
    if s < 0:
        raise NegativeRadicand(f"cannot adjoin sqrt of negative element {x}")
    if s == 0 or _sqrt(x) is not None:
        raise AlreadySquare(f"{x} is already a square in {ctx!r}")
    if x.is_rational():
        q = x.to_fraction()
        m, radicand = _square_split(q.numerator * q.denominator)
        scale = Fraction(m, q.denominator)
    else:
        radicand, scale = x, Fraction(1)
    new = ctx._extend(radicand)
    return new, new.gen * scale


def sqrt_or_adjoin(x: FieldElem) -> tuple[TowerCtx, FieldElem]:
    y = x.sqrt()
    if y is not None:
        return x.ctx, y
    return adjoin_sqrt(x.ctx, x)


def common_ctx(values: Iterable) -> TowerCtx:
    """The largest tower among the FieldElems in ``values``; all must nest."""
    best = QQ
    for v in values:
        if isinstance(v, FieldElem):
            if best.is_prefix_of(v.ctx):
                best = v.ctx
            elif not v.ctx.is_prefix_of(best):
                raise CtxMismatch(f"{v.ctx!r} and {best!r} do not nest")
    return best


def approx(x: Number, digits: int) -> str:
    """Decimal string with ``digits`` fractional digits, rounded half away from zero.

    The rounding decision is made with exact sign tests, so the result is
    correctly rounded regardless of cancellation in the float estimate.
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    if not isinstance(x, FieldElem):
        x = QQ(x)
    s = x.sign()
    y = abs(x) * 10**digits + Fraction(1, 2)
    n = _floor(y)
    text = str(n).rjust(digits + 1, "0")
    sign = "-" if s < 0 and n else ""
    return f"{sign}{text[:-digits]}.{text[-digits:]}"


def _floor(y: FieldElem) -> int:
    prec = 50
    while True:
        est = y._decimal(prec)
        with localcontext() as dc:
            dc.prec = prec
            n = int(est.to_integral_value(rounding=ROUND_FLOOR))
        for cand in (n, n - 1, n + 1):
            if (y - cand).sign() >= 0 and (y - (cand + 1)).sign() < 0:
                return cand
        prec *= 2


# -- textual grammar -------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(sqrt)|([-+*/()]))")


class _Parser:
    def __init__(self, text: str, ctx: TowerCtx):
        self.text = text
        self.ctx = ctx
        self.tokens: list[tuple[str, int]] = []
        pos = 0
        stripped = text.rstrip()
        while pos < len(stripped):
            m = _TOKEN.match(stripped, pos)
            if not m:
                bad = stripped[pos:].lstrip()
                at = len(stripped) - len(bad)
                raise ParseError("unexpected character", bad[:1], at)
            tok = m.group(1) or m.group(2) or m.group(3)
            self.tokens.append((tok, m.start(m.lastindex)))
            pos = m.end()
        self.i = 0

    def peek(self) -> str | None:
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def take(self) -> tuple[str, int]:
        if self.i >= len(self.tokens):
            raise ParseError("unexpected end of input", "", len(self.text))
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, want: str) -> None:
        tok, pos = self.take()
        if tok != want:
            raise ParseError(f"expected {want!r}", tok, pos)

    def unify(self, x: FieldElem, y: FieldElem) -> tuple[FieldElem, FieldElem]:
        ctx = x.ctx if y.ctx.is_prefix_of(x.ctx) else y.ctx
        return ctx(x), ctx(y)

    def parse(self) -> FieldElem:
        if not self.tokens:
            raise ParseError("empty expression", "", 0)
        value = self.expr()
        if self.i < len(self.tokens):
            tok, pos = self.tokens[self.i]
            raise ParseError("unexpected token", tok, pos)
        return self.ctx(value)

    def expr(self) -> FieldElem:
        value = self.term()
        while self.peek() in ("+", "-"):
            op, _ = self.take()
            rhs = self.term()
            value, rhs = self.unify(value, rhs)
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> FieldElem:
        value = self.unary()
        while self.peek() in ("*", "/"):
            op, pos = self.take()
            rhs = self.unary()
            value, rhs = self.unify(value, rhs)
            if op == "*":
                value = value * rhs
            elif not rhs:
                raise ParseError("division by zero", op, pos)
            else:
                value = value / rhs
        return value

    def unary(self) -> FieldElem:
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.atom()

    def atom(self) -> FieldElem:
        tok, pos = self.take()
        if tok.isdigit():
            return self.ctx(int(tok))
        if tok == "(":
            value = self.expr()
            self.expect(")")
            return value
        if tok == "sqrt":
            self.expect("(")
            value = self.expr()
            value = self.ctx(value)  # the inner expression may have grown the tower
            self.expect(")")
            if value.sign() < 0:
                raise ParseError("square root of a negative value", tok, pos)
            root = _sqrt(value)
            if root is None:
                self.ctx, root = adjoin_sqrt(self.ctx, value)
            return root
        raise ParseError("unexpected token", tok, pos)


def parse(text: str, ctx: TowerCtx = QQ) -> FieldElem:
    """Parse one element, growing ``ctx`` when a new square root appears."""
    return _Parser(text, ctx).parse()


def parse_many(texts: Iterable[str], ctx: TowerCtx = QQ) -> tuple[TowerCtx, list[FieldElem]]:
    """Parse several elements into one common tower."""
    values = []
    for text in texts:
        p = _Parser(text, ctx)
        values.append(p.parse())
        ctx = p.ctx
    return ctx, [ctx(v) for v in values]
