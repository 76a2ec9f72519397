"""The moduli domain D of triangle shapes and the piecewise maps L and R.

A point ``z = x + s*sqrt(d)*i`` is stored as the rational pair ``(x, s)``
together with the square-free radicand ``d``.  Every map used here is built
from affine maps, conjugation and ``z -> conj(z)/|z|^2``, and ``|z|^2`` is
rational, so the form ``x + s*sqrt(d)*i`` with rational ``x, s`` is preserved
exactly.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Callable

from .errors import DegenerateTriangle, FieldMismatch, InputError, PointOutsideD
from .exactnum import QuadVal, as_rat, format_rat, rat_sqrt_decompose

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)
THIRD = Fraction(1, 3)


class ExactComplex:
    """``x + s*sqrt(d)*i`` with rational ``x, s``; not constrained to D."""

    __slots__ = ("x", "s", "d")

    def __init__(self, x, s, d: int = 1) -> None:
        x = as_rat(x)
        s = as_rat(s)
        if d < 1:
            raise InputError(f"radicand must be positive, got {d}")
        if not s:
            d = 1
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def _field(self, other: ExactComplex) -> int:
        if self.d == other.d or not other.s:
            return self.d
        if not self.s:
            return other.d
        raise FieldMismatch(f"imaginary parts in sqrt({self.d}) and sqrt({other.d})")

    def _wrap(self, other) -> ExactComplex:
        if isinstance(other, ExactComplex):
            return other
        if isinstance(other, (int, Fraction)):
            return ExactComplex(other, 0, 1)
        return NotImplemented

    def __add__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return o
        return ExactComplex(self.x + o.x, self.s + o.s, self._field(o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return o
        return ExactComplex(self.x - o.x, self.s - o.s, self._field(o))

    def __rsub__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return ExactComplex(-self.x, -self.s, self.d)

    def __mul__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return o
        d = self._field(o)
        return ExactComplex(
            self.x * o.x - self.s * o.s * d, self.x * o.s + self.s * o.x, d
        )

    __rmul__ = __mul__

    def conj(self) -> ExactComplex:
        return ExactComplex(self.x, -self.s, self.d)

    def abs2(self) -> Fraction:
        return self.x * self.x + self.s * self.s * self.d

    def reciprocal(self) -> ExactComplex:
        n = self.abs2()
        if not n:
            raise ZeroDivisionError("reciprocal of zero")
        return ExactComplex(self.x / n, -self.s / n, self.d)

    def __truediv__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return o
        return self * o.reciprocal()

    def __rtruediv__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return o
        return o * self.reciprocal()

    @property
    def imag(self) -> QuadVal:
        return QuadVal(0, self.s, self.d)

    @property
    def y2(self) -> Fraction:
        """Squared imaginary part, always rational."""
        return self.s * self.s * self.d

    def key(self) -> tuple[Fraction, Fraction, int]:
        return (self.x, self.s, self.d)

    def __eq__(self, other) -> bool:
        if isinstance(other, ExactComplex):
            return self.x == other.x and self.s == other.s and (self.d == other.d or not self.s)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.x, self.s, self.d))

    def __complex__(self) -> complex:
        return complex(float(self.x), float(self.s) * math.sqrt(self.d))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({format_rat(self.x)!r}, {format_rat(self.s)!r}, {self.d})"

    def __str__(self) -> str:
        return format_point(self)


def format_point(z: ExactComplex) -> str:
    if z.d == 1:
        return f"{format_rat(z.x)} + {format_rat(z.s)}*i"
    return f"{format_rat(z.x)} + {format_rat(z.s)}*sqrt({z.d})*i"


def in_domain(z: ExactComplex) -> bool:
    return z.s > 0 and z.x <= HALF and (z.x - 1) ** 2 + z.y2 <= 1


class ShapePoint(ExactComplex):
    """A similarity class of triangles: a point of D."""

    __slots__ = ()

    def __init__(self, x, s, d: int = 1) -> None:
        super().__init__(x, s, d)
        if not in_domain(self):
            raise PointOutsideD(f"{format_point(self)} is not in D")

    @classmethod
    def of(cls, z: ExactComplex) -> ShapePoint:
        if isinstance(z, ShapePoint):
            return z
        return cls(z.x, z.s, z.d)

    def to_json(self) -> dict:
        return {"x": format_rat(self.x), "s": format_rat(self.s), "d": self.d}

    @classmethod
    def from_json(cls, obj: dict) -> ShapePoint:
        return cls(as_rat(str(obj["x"])), as_rat(str(obj["s"])), int(obj.get("d", 1)))


ZETA = ShapePoint(HALF, HALF, 1)


def point_from_y2(x, y2, bound: int | None = None) -> ShapePoint:
    """The point ``x + sqrt(y2)*i`` for rational ``x`` and positive rational ``y2``."""
    s, d = rat_sqrt_decompose(as_rat(y2)) if bound is None else rat_sqrt_decompose(as_rat(y2), bound)
    return ShapePoint(as_rat(x), s, d)


class Region(str, enum.Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"
    V = "V"
    VI = "VI"

    def __str__(self) -> str:
        return self.value


def _boundary_tests(z: ExactComplex) -> tuple[Fraction, Fraction, Fraction]:
    y2 = z.y2
    return (
        z.x - QUARTER,
        z.x * z.x + y2 - QUARTER,
        (z.x - HALF) ** 2 + y2 - QUARTER,
    )


def classify(z: ExactComplex) -> Region:
    """Subregion of D containing ``z``.

    Boundary ownership: ``Re z = 1/4`` goes to the left-hand regions, the arc
    ``|z - 1/2| = 1/2`` to I or III, and the arc ``|z| = 1/2`` to II or IV.
    The triple point ``1/4 + (sqrt 3/4) i`` where all three meet goes to I,
    the first region in the order I..VI.  The maps agree across every boundary, so this choice does not affect
    the dynamics.
    """
    if not in_domain(z):
        raise PointOutsideD(f"{format_point(z)} is not in D")
    t_re, t_abs, t_mid = _boundary_tests(z)
    if t_re == 0 and t_abs == 0:
        return Region.I
    if t_re <= 0:
        if t_abs >= 0:
            return Region.II
        return Region.V if t_mid < 0 else Region.III
    if t_mid >= 0:
        return Region.I
    return Region.VI if t_abs < 0 else Region.IV


def in_v_tilde(z: ExactComplex) -> bool:
    """Membership in the subregion of V with ``|z - 1/3| <= 1/3``."""
    return classify(z) is Region.V and (z.x - THIRD) ** 2 + z.y2 <= THIRD * THIRD


def in_terminal_region(z: ExactComplex) -> bool:
    """Membership in the closure of ``I u R(I)`` inside D.

    ``R(I)`` is the part of IV with ``|z - 1/3| >= 1/3``; points on the
    boundary arcs are included because their orbits have at most four classes.
    """
    if not in_domain(z):
        raise PointOutsideD(f"{format_point(z)} is not in D")
    t_re, t_abs, t_mid = _boundary_tests(z)
    if t_re >= 0 and t_mid >= 0:
        return True
    return t_abs >= 0 and t_mid <= 0 and (z.x - THIRD) ** 2 + z.y2 >= THIRD * THIRD


# --- the piecewise maps ------------------------------------------------------

def _two(z: ExactComplex) -> ExactComplex:
    return ExactComplex(2 * z.x, 2 * z.s, z.d)


def L_I(z):
    return _two(z.conj()).reciprocal()


def L_II(z):
    return -(_two(z) - 1).reciprocal()


def L_III(z):
    w = _two(z.conj())
    return w / (w - 1)


def L_IV(z):
    w = _two(z)
    return (w - 1) / w


def L_V(z):
    return _two(z)


def L_VI(z):
    return 1 - _two(z.conj())


def R_I_II_III(z):
    return -(_two(z) - 2).reciprocal()


def R_IV_V_VI(z):
    w = _two(z.conj())
    return (w - 1) / (w - 2)


L_FORMULAS: dict[Region, Callable[[ExactComplex], ExactComplex]] = {
    Region.I: L_I,
    Region.II: L_II,
    Region.III: L_III,
    Region.IV: L_IV,
    Region.V: L_V,
    Region.VI: L_VI,
}

R_FORMULAS: dict[Region, Callable[[ExactComplex], ExactComplex]] = {
    Region.I: R_I_II_III,
    Region.II: R_I_II_III,
    Region.III: R_I_II_III,
    Region.IV: R_IV_V_VI,
    Region.V: R_IV_V_VI,
    Region.VI: R_IV_V_VI,
}


def _to_domain(w: ExactComplex, name: str, z: ExactComplex) -> ShapePoint:
    if not in_domain(w):
        raise PointOutsideD(f"{name}({format_point(z)}) = {format_point(w)} left D")
    return ShapePoint.of(w)


def apply_L(z: ExactComplex) -> ShapePoint:
    return _to_domain(L_FORMULAS[classify(z)](z), "L", z)


def apply_R(z: ExactComplex) -> ShapePoint:
    return _to_domain(R_FORMULAS[classify(z)](z), "R", z)


def h_formula(z: ExactComplex) -> ExactComplex:
    """``-z / (z - 1)``, the closed form of ``L o R`` on the lens near 0."""
    return -z / (z - 1)


# --- geodesics and metric ----------------------------------------------------

class Geodesic(str, enum.Enum):
    NONE = "None"
    RE_HALF = "ReHalf"
    ABS_ROOT2 = "AbsRoot2"
    ABS_MINUS1_ROOT2 = "AbsMinus1Root2"

    def __str__(self) -> str:
        return self.value


def on_genericity_geodesic(z: ExactComplex) -> Geodesic:
    """Which of ``|z| = sqrt2/2``, ``|z-1| = sqrt2/2``, ``Re z = 1/2`` holds.

    At zeta the first and third coincide; priority is AbsRoot2, then
    AbsMinus1Root2, then ReHalf.
    """
    y2 = z.y2
    if z.x * z.x + y2 == HALF:
        return Geodesic.ABS_ROOT2
    if (z.x - 1) ** 2 + y2 == HALF:
        return Geodesic.ABS_MINUS1_ROOT2
    if z.x == HALF:
        return Geodesic.RE_HALF
    return Geodesic.NONE


def hyperbolic_distance(z: ExactComplex, w: ExactComplex) -> float:
    """Upper half-plane distance ``arcosh(1 + |z-w|^2 / (2 Im z Im w))``.

    Evaluated as ``2 asinh(sqrt(|z-w|^2 / (4 Im z Im w)))``, which keeps full
    relative precision for nearby points.
    """
    if z.s <= 0 or w.s <= 0:
        raise InputError("hyperbolic distance needs points in the upper half-plane")
    if z.d == w.d:
        num = (z.x - w.x) ** 2 + (z.s - w.s) ** 2 * z.d
        den = 4 * z.s * w.s * z.d
        ratio = float(num / den)
    else:
        a, b = complex(z), complex(w)
        ratio = abs(a - b) ** 2 / (4 * a.imag * b.imag)
    return 2.0 * math.asinh(math.sqrt(ratio))


def zeta_radius_invariant(z: ExactComplex) -> QuadVal:
    """``|z - zeta|^2 / Im z``; equal values mean equal hyperbolic distance to zeta."""
    dist2 = QuadVal((z.x - HALF) ** 2 + z.y2 + QUARTER, -z.s, z.d)
    return dist2 / z.imag


# --- side lengths ------------------------------------------------------------

@dataclass(frozen=True)
class SideLengths:
    """Squared side lengths of a triangle, in any order."""

    sq_a: Fraction
    sq_b: Fraction
    sq_c: Fraction

    def __post_init__(self) -> None:
        vals = [as_rat(v) for v in (self.sq_a, self.sq_b, self.sq_c)]
        for name, v in zip(("sq_a", "sq_b", "sq_c"), vals):
            object.__setattr__(self, name, v)
        a, b, c = vals
        if min(vals) <= 0:
            raise DegenerateTriangle("squared side lengths must be positive")
        # 16 * area^2 in terms of squared lengths
        if 2 * (a * b + b * c + c * a) - a * a - b * b - c * c <= 0:
            raise DegenerateTriangle(f"sides with squares {a}, {b}, {c} are degenerate")

    @classmethod
    def from_decimal_sides(cls, a, b, c) -> SideLengths:
        """Sides given as decimal literals; each is read as its exact decimal value."""
        vals = []
        for v in (a, b, c):
            try:
                dv = Decimal(str(v))
            except Exception as exc:  # decimal raises its own InvalidOperation
                raise InputError(f"not a decimal side length: {v!r}") from exc
            if not dv.is_finite():
                raise InputError(f"side length must be finite: {v!r}")
            vals.append(Fraction(dv) ** 2)
        return cls(*vals)


def from_side_lengths(sl: SideLengths, bound: int | None = None) -> ShapePoint:
    longest, q2, p2 = sorted((sl.sq_a, sl.sq_b, sl.sq_c), reverse=True)
    p2 /= longest
    q2 /= longest
    x = (1 + p2 - q2) / 2
    return point_from_y2(x, p2 - x * x, bound)


def squared_sides(z: ExactComplex) -> tuple[Fraction, Fraction, Fraction]:
    """``(1, |z-1|^2, |z|^2)``: the squared sides of the triangle 0, 1, z."""
    return (Fraction(1), (z.x - 1) ** 2 + z.y2, z.abs2())
