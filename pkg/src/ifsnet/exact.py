"""Exact arithmetic in Q and in a real quadratic field Q(sqrt(d)).

A :class:`Scalar` stores ``(p + q*sqrt(d)) / n`` with integers ``p, q``,
``n > 0`` and ``gcd(p, q, n) == 1``.  Pure rationals always carry ``q == 0``
and ``d == 0`` so that a rational constant such as ``1/2`` combines with any
quadratic value.  Two scalars with non-zero irrational parts must share the
same radicand.
"""
from __future__ import annotations

import re
from decimal import Decimal, localcontext
from fractions import Fraction
from math import gcd, isqrt
from numbers import Rational

__all__ = [
    "Scalar",
    "RadicandError",
    "is_square_free",
    "scalar",
    "parse_scalar",
    "scalar_arith",
    "scalar_sign",
]


class RadicandError(ValueError):
    """Raised for an invalid radicand or when two radicands do not match."""


def is_square_free(d: int) -> bool:
    if d < 1:
        return False
    f = 2
    while f * f <= d:
        if d % (f * f) == 0:
            return False
        f += 1
    return True


def _sign_of(p: int, q: int, d: int) -> int:
    """Sign of p + q*sqrt(d) for integers p, q and square-free d (or d == 0)."""
    if q == 0 or d == 0:
        return (p > 0) - (p < 0)
    sq = (q > 0) - (q < 0)
    if p == 0:
        return sq
    sp = (p > 0) - (p < 0)
    if sp == sq:
        return sp
    # opposite signs: the term with the larger square wins (never equal, d is not a square)
    return sp if p * p > q * q * d else sq


class Scalar:
    """An exact element of Q or Q(sqrt(d)), immutable and totally ordered."""

    __slots__ = ("p", "q", "n", "d", "_hash")

    def __init__(self, a=0, b=0, d: int = 0):
        a = Fraction(a)
        b = Fraction(b)
        if b != 0:
            if d == 1:
                a, b, d = a + b, Fraction(0), 0
            elif not is_square_free(d):
                raise RadicandError(f"radicand {d} is not square-free")
        n = a.denominator * b.denominator // gcd(a.denominator, b.denominator)
        self._set(a.numerator * (n // a.denominator), b.numerator * (n // b.denominator), n, d)

    def _set(self, p: int, q: int, n: int, d: int) -> None:
        if q == 0:
            d = 0
        g = gcd(gcd(p, q), n)
        if g != 1:
            p //= g
            q //= g
            n //= g
        self.p = p
        self.q = q
        self.n = n
        self.d = d
        self._hash = None

    @classmethod
    def _raw(cls, p: int, q: int, n: int, d: int) -> Scalar:
        obj = cls.__new__(cls)
        if n < 0:
            p, q, n = -p, -q, -n
        obj._set(p, q, n, d)
        return obj

    @classmethod
    def coerce(cls, x) -> Scalar:
        if type(x) is cls or isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Rational)):
            f = Fraction(x)
            return cls._raw(f.numerator, 0, f.denominator, 0)
        if isinstance(x, str):
            return parse_scalar(x)
        raise TypeError(f"cannot convert {type(x).__name__} to Scalar")

    # -- components --------------------------------------------------------

    @property
    def a(self) -> Fraction:
        """Rational part."""
        return Fraction(self.p, self.n)

    @property
    def b(self) -> Fraction:
        """Coefficient of sqrt(d)."""
        return Fraction(self.q, self.n)

    @property
    def is_rational(self) -> bool:
        return self.q == 0

    def conjugate(self) -> Scalar:
        return Scalar._raw(self.p, -self.q, self.n, self.d)

    # -- arithmetic --------------------------------------------------------

    def _radicand(self, other: Scalar) -> int:
        if self.q == 0:
            return other.d
        if other.q == 0 or other.d == self.d:
            return self.d
        raise RadicandError(f"mismatched radicands {self.d} and {other.d}")

    def __add__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._radicand(o)
        if self.n == o.n:
            return Scalar._raw(self.p + o.p, self.q + o.q, self.n, d)
        return Scalar._raw(self.p * o.n + o.p * self.n, self.q * o.n + o.q * self.n, self.n * o.n, d)

    __radd__ = __add__

    def __neg__(self) -> Scalar:
        return Scalar._raw(-self.p, -self.q, self.n, self.d)

    def __pos__(self) -> Scalar:
        return self

    def __sub__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._radicand(o)
        if self.n == o.n:
            return Scalar._raw(self.p - o.p, self.q - o.q, self.n, d)
        return Scalar._raw(self.p * o.n - o.p * self.n, self.q * o.n - o.q * self.n, self.n * o.n, d)

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._radicand(o)
        if self.q == 0 and o.q == 0:
            return Scalar._raw(self.p * o.p, 0, self.n * o.n, 0)
        return Scalar._raw(
            self.p * o.p + self.q * o.q * d,
            self.p * o.q + self.q * o.p,
            self.n * o.n,
            d,
        )

    __rmul__ = __mul__

    def reciprocal(self) -> Scalar:
        if self.p == 0 and self.q == 0:
            raise ZeroDivisionError("Scalar division by zero")
        if self.q == 0:
            return Scalar._raw(self.n, 0, self.p, 0)
        norm = self.p * self.p - self.q * self.q * self.d
        return Scalar._raw(self.n * self.p, -self.n * self.q, norm, self.d)

    def __truediv__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        self._radicand(o)
        return self * o.reciprocal()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) / self

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        base = self if e >= 0 else self.reciprocal()
        out = Scalar._raw(1, 0, 1, 0)
        for _ in range(abs(e)):
            out = out * base
        return out

    def __abs__(self) -> Scalar:
        return -self if self.sign() < 0 else self

    # -- order -------------------------------------------------------------

    def sign(self) -> int:
        return _sign_of(self.p, self.q, self.d)

    def _cmp(self, other) -> int:
        o = other if type(other) is Scalar else Scalar.coerce(other)
        lhs, rhs = self.p * o.n, o.p * self.n
        if self.q == 0 and o.q == 0:
            return (lhs > rhs) - (lhs < rhs)
        return _sign_of(lhs - rhs, self.q * o.n - o.q * self.n, self._radicand(o))

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.p == other.p and self.q == other.q and self.n == other.n and self.d == other.d
        if isinstance(other, (int, Rational)):
            return self.q == 0 and Fraction(self.p, self.n) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.q == 0:
                self._hash = hash(Fraction(self.p, self.n))
            else:
                self._hash = hash((self.p, self.q, self.n, self.d))
        return self._hash

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __bool__(self) -> bool:
        return self.p != 0 or self.q != 0

    def floor(self) -> int:
        if self.q == 0:
            return self.p // self.n
        t = isqrt(self.q * self.q * self.d)
        irr = t if self.q > 0 else -t - 1
        return (self.p + irr) // self.n

    def ceil(self) -> int:
        return -(-self).floor()

    # -- conversions -------------------------------------------------------

    def __float__(self) -> float:
        if self.q == 0:
            return self.p / self.n
        return float(self.to_decimal(30))

    def to_decimal(self, digits: int = 30) -> Decimal:
        with localcontext() as ctx:
            ctx.prec = digits + 10
            val = Decimal(self.p)
            if self.q:
                val += Decimal(self.q) * Decimal(self.d).sqrt()
            val /= Decimal(self.n)
            ctx.prec = digits
            return +val

    def render(self) -> str:
        """Canonical text form: ``p/q`` or ``(p/q)+(r/s)*sqrt(d)``."""
        a = Fraction(self.p, self.n)
        if self.q == 0:
            return f"{a.numerator}/{a.denominator}"
        b = Fraction(self.q, self.n)
        return f"({a.numerator}/{a.denominator})+({b.numerator}/{b.denominator})*sqrt({self.d})"

    __str__ = render

    def __repr__(self) -> str:
        return f"Scalar('{self.render()}')"

    def __reduce__(self):
        return (parse_scalar, (self.render(),))


_RAT = r"\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?"
_RAT_RE = re.compile(rf"^{_RAT}$")
_QUAD_RE = re.compile(rf"^\s*\({_RAT}\)\s*\+\s*\({_RAT}\)\s*\*\s*sqrt\(\s*(\d+)\s*\)\s*$")


def _frac(num: str, den: str | None) -> Fraction:
    if den is not None and int(den) == 0:
        raise ValueError("zero denominator")
    return Fraction(int(num), int(den) if den is not None else 1)


def parse_scalar(text: str) -> Scalar:
    """Parse the canonical text form (integers without ``/q`` are accepted too)."""
    m = _RAT_RE.match(text)
    if m:
        return Scalar(_frac(m.group(1), m.group(2)))
    m = _QUAD_RE.match(text)
    if m:
        a = _frac(m.group(1), m.group(2))
        b = _frac(m.group(3), m.group(4))
        return Scalar(a, b, int(m.group(5)))
    raise ValueError(f"malformed scalar {text!r}")


def scalar(x) -> Scalar:
    """Convenience constructor: ints, Fractions, strings, Scalars."""
    return Scalar.coerce(x)


def scalar_arith(x: Scalar, y: Scalar, op: str) -> Scalar:
    ops = {
        "add": Scalar.__add__,
        "sub": Scalar.__sub__,
        "mul": Scalar.__mul__,
        "div": Scalar.__truediv__,
    }
    try:
        fn = ops[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None
    return fn(Scalar.coerce(x), Scalar.coerce(y))


def scalar_sign(x: Scalar) -> int:
    return Scalar.coerce(x).sign()
