"""Exact arithmetic in Q and in real quadratic fields Q(sqrt d).

Rationals are plain :class:`fractions.Fraction` values (always reduced, with a
positive denominator).  :class:`QuadVal` is ``a + b*sqrt(d)`` with rational
``a, b`` and square-free ``d >= 1``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from .errors import FactorizationLimitExceeded, FieldMismatch, InputError

Rat = Fraction

DEFAULT_FACTOR_BOUND = 10**6

_ZERO = Fraction(0)


def as_rat(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rat(value)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def parse_rat(text: str) -> Fraction:
    """Parse ``"p/q"``, an integer, or a finite decimal literal exactly."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational number: {text!r}") from exc


def format_rat(r: Fraction) -> str:
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


@lru_cache(maxsize=4096)
def is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        if n % p == 0:
            n //= p
        p += 1
    return True


class QuadVal:
    """An element ``a + b*sqrt(d)`` of Q(sqrt d).

    ``d`` is the ambient square-free radicand shared by a computation; values
    with different ``d`` never mix.  For ``d == 1`` the radical is folded into
    ``a`` so the representation stays unique.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int = 1) -> None:
        a = as_rat(a)
        b = as_rat(b)
        if not is_squarefree(d):
            raise InputError(f"radicand must be a positive square-free integer, got {d}")
        if d == 1 and b:
            a, b = a + b, _ZERO
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    @classmethod
    def _raw(cls, a: Fraction, b: Fraction, d: int) -> QuadVal:
        # caller guarantees a, b are Fractions and b == 0 when d == 1
        obj = object.__new__(cls)
        object.__setattr__(obj, "a", a)
        object.__setattr__(obj, "b", b)
        object.__setattr__(obj, "d", d)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("QuadVal is immutable")

    # -- coercion ---------------------------------------------------------

    def _coerce(self, other) -> QuadVal:
        if isinstance(other, QuadVal):
            return other
        if isinstance(other, (int, Fraction)):
            return QuadVal._raw(Fraction(other), _ZERO, self.d)
        return NotImplemented

    def _field(self, other: QuadVal) -> int:
        # a rational value lies in every field; two irrational values must agree
        if self.d == other.d or not other.b:
            return self.d
        if not self.b:
            return other.d
        raise FieldMismatch(f"Q(sqrt {self.d}) vs Q(sqrt {other.d})")

    # -- field operations -------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadVal._raw(self.a + o.a, self.b + o.b, self._field(o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadVal._raw(self.a - o.a, self.b - o.b, self._field(o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return QuadVal._raw(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = self._field(o)
        if not self.b and not o.b:
            return QuadVal._raw(self.a * o.a, _ZERO, d)
        return QuadVal._raw(
            self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a, d
        )

    __rmul__ = __mul__

    def conjugate(self) -> QuadVal:
        return QuadVal._raw(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        """Field norm ``a^2 - b^2 d`` (zero only for zero when d > 1)."""
        return self.a * self.a - self.b * self.b * self.d

    def inverse(self) -> QuadVal:
        if not self:
            raise ZeroDivisionError("QuadVal division by zero")
        if not self.b:
            return QuadVal._raw(1 / self.a, _ZERO, self.d)
        n = self.norm()
        return QuadVal._raw(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int) -> QuadVal:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadVal._raw(Fraction(1), _ZERO, self.d)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison -------------------------------------------------------

    def sign(self) -> int:
        return sign(self)

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __eq__(self, other) -> bool:
        if isinstance(other, QuadVal):
            if self.b or other.b:
                return self.d == other.d and self.a == other.a and self.b == other.b
            return self.a == other.a
        if isinstance(other, (int, Fraction)):
            return not self.b and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is NotImplemented:
            raise TypeError(f"cannot compare QuadVal with {type(other).__name__}")
        return sign(self - o)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def is_rational(self) -> bool:
        return not self.b

    def __float__(self) -> float:
        # exact rounding of each term keeps the error tiny for moderate sizes
        if not self.b:
            return float(self.a)
        return float(self.a) + float(self.b) * self.d**0.5

    def __repr__(self) -> str:
        return f"QuadVal({format_rat(self.a)!r}, {format_rat(self.b)!r}, {self.d})"

    def __str__(self) -> str:
        return format_quad(self)


def sign(v: QuadVal) -> int:
    """Exact sign of ``a + b*sqrt(d)``."""
    sa = (v.a > 0) - (v.a < 0)
    sb = (v.b > 0) - (v.b < 0)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: compare a^2 with b^2 d
    diff = v.a * v.a - v.b * v.b * v.d
    if diff == 0:
        return 0
    return sa if diff > 0 else sb


def sqrt_rat(r) -> QuadVal:
    """``sqrt(r)`` for a positive rational as an element of Q(sqrt d)."""
    s, d = rat_sqrt_decompose(as_rat(r))
    return QuadVal(0, s, d) if d > 1 else QuadVal(s, 0, 1)


def _factor_square_part(n: int, bound: int) -> tuple[int, int]:
    """Split ``n = k^2 * m`` with ``m`` square-free, by trial division."""
    k, m = 1, 1
    p = 2
    while p * p <= n:
        if p > bound:
            raise FactorizationLimitExceeded(
                f"cannot certify square-free part of {n} below trial bound {bound}"
            )
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            k *= p ** (e // 2)
            if e % 2:
                m *= p
        p += 1 if p == 2 else 2
    # remaining cofactor is 1 or a prime
    m *= n
    return k, m


def rat_sqrt_decompose(r: Fraction, bound: int = DEFAULT_FACTOR_BOUND) -> tuple[Fraction, int]:
    """Return ``(s, d)`` with ``s**2 * d == r``, ``s > 0`` and ``d`` square-free."""
    r = as_rat(r)
    if r <= 0:
        raise InputError(f"expected a positive rational, got {r}")
    # sqrt(p/q) = sqrt(p q) / q
    kn, mn = _factor_square_part(r.numerator, bound)
    kd, md = _factor_square_part(r.denominator, bound)
    # sqrt(kn^2 mn / (kd^2 md)) = (kn / (kd md)) sqrt(mn md)
    d = mn * md
    # mn and md are coprime square-free numbers, so their product is square-free
    s = Fraction(kn, kd * md)
    return s, d


_QUAD_RE = re.compile(
    r"""^\s*
    (?P<a>[+-]?\s*[0-9./]+)?\s*
    (?:(?P<sgn>[+-])\s*(?P<b>[0-9./]+)?\s*\*?\s*sqrt\(\s*(?P<d>[0-9]+)\s*\))?
    \s*$""",
    re.VERBOSE,
)


def parse_quad(text: str) -> QuadVal:
    """Parse ``"p/q + r/s*sqrt(d)"`` (either term may be omitted)."""
    t = text.strip()
    if t.startswith("sqrt(") or t.startswith("-sqrt("):
        t = "0 " + ("+ " + t if t[0] != "-" else t)
    m = _QUAD_RE.match(t)
    if not m or (m.group("a") is None and m.group("d") is None):
        raise InputError(f"not a quadratic-field value: {text!r}")
    a = parse_rat(m.group("a").replace(" ", "")) if m.group("a") else Fraction(0)
    if m.group("d") is None:
        return QuadVal(a, 0, 1)
    b = parse_rat(m.group("b")) if m.group("b") else Fraction(1)
    if m.group("sgn") == "-":
        b = -b
    d = int(m.group("d"))
    if not is_squarefree(d):
        s, d = rat_sqrt_decompose(Fraction(d))
        b *= s
    return QuadVal(a, b, d)


def format_quad(v: QuadVal) -> str:
    if not v.b:
        return format_rat(v.a)
    op = "+" if v.b > 0 else "-"
    return f"{format_rat(v.a)} {op} {format_rat(abs(v.b))}*sqrt({v.d})"
