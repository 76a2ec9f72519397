"""Deterministic exact samples of D: grids, seeded random rationals, and
points lying exactly on the special geodesics."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Iterator

from .shapespace import (
    HALF,
    QUARTER,
    ZETA,
    Region,
    ShapePoint,
    classify,
    in_domain,
    point_from_y2,
)

DEFAULT_SEED = 20240607


def grid_points(step: Fraction, d: int = 1) -> Iterator[ShapePoint]:
    """Points ``(a*step, b*step)`` of D in column-major order (x, then y).

    With ``d > 1`` the imaginary coordinate is ``b*step*sqrt(d)``.
    """
    step = Fraction(step)
    a = 1
    while a * step <= HALF:
        x = a * step
        b = 1
        while (x - 1) ** 2 + (b * step) ** 2 * d <= 1:
            yield ShapePoint(x, b * step, d)
            b += 1
        a += 1


def random_rational_point(rng: random.Random, max_den: int = 400) -> ShapePoint:
    """A random rational point of D (rejection sampling on the bounding box)."""
    while True:
        den = rng.randint(4, max_den)
        x = Fraction(rng.randint(1, den // 2), den)
        y = Fraction(rng.randint(1, den - 1), den)
        if (x - 1) ** 2 + y * y <= 1:
            return ShapePoint(x, y)


def random_points(
    count: int,
    predicate: Callable[[ShapePoint], bool] = lambda z: True,
    seed: int = DEFAULT_SEED,
    max_den: int = 400,
    box: tuple[Fraction, Fraction, Fraction, Fraction] | None = None,
    max_tries: int = 10**6,
) -> list[ShapePoint]:
    """``count`` distinct random rational points of D satisfying ``predicate``.

    ``box`` = ``(x0, x1, y0, y1)`` restricts sampling to a rectangle.
    """
    rng = random.Random(seed)
    seen: set[ShapePoint] = set()
    out: list[ShapePoint] = []
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > max_tries:
            raise RuntimeError(f"only found {len(out)} of {count} points")
        if box is None:
            z = random_rational_point(rng, max_den)
        else:
            x0, x1, y0, y1 = box
            den = rng.randint(4, max_den)
            x = x0 + (x1 - x0) * Fraction(rng.randint(1, den - 1), den)
            y = y0 + (y1 - y0) * Fraction(rng.randint(1, den - 1), den)
            if not (y > 0 and x <= HALF and (x - 1) ** 2 + y * y <= 1):
                continue
            z = ShapePoint(x, y)
        if z in seen or not predicate(z):
            continue
        seen.add(z)
        out.append(z)
    return out


def in_regions(*regions: Region) -> Callable[[ShapePoint], bool]:
    wanted = set(regions)
    return lambda z: classify(z) in wanted


# --- exact points on geodesics ----------------------------------------------

def _on_circle(center_x: Fraction, radius2: Fraction, xs) -> list[ShapePoint]:
    out = []
    for x in xs:
        y2 = radius2 - (x - center_x) ** 2
        if y2 <= 0:
            continue
        z = point_from_y2(x, y2)
        if in_domain(z):
            out.append(z)
    return out


def _fractions_between(lo: Fraction, hi: Fraction, count: int, den0: int = 7) -> list[Fraction]:
    """``count`` distinct rationals strictly inside (lo, hi) with small denominators."""
    out: list[Fraction] = []
    den = den0
    while len(out) < count:
        for k in range(1, den):
            f = lo + (hi - lo) * Fraction(k, den)
            if lo < f < hi and f not in out:
                out.append(f)
                if len(out) == count:
                    break
        den += 1
    return sorted(out)


def points_abs_root2(xs) -> list[ShapePoint]:
    """Points with ``|z|^2 = 1/2``."""
    return _on_circle(Fraction(0), HALF, xs)


def points_abs_minus1_root2(xs) -> list[ShapePoint]:
    """Points with ``|z - 1|^2 = 1/2``."""
    return _on_circle(Fraction(1), HALF, xs)


def points_mid_circle(xs) -> list[ShapePoint]:
    """Points with ``|z - 1/2| = 1/2``."""
    return _on_circle(HALF, QUARTER, xs)


def points_re_half(ys) -> list[ShapePoint]:
    """Points ``1/2 + y i`` for rational ``y``."""
    return [ShapePoint(HALF, y) for y in ys if y > 0 and QUARTER + y * y <= 1]


def geodesic_samples() -> dict[str, ShapePoint]:
    """One representative on each genericity geodesic, away from zeta."""
    return {
        "abs_root2": points_abs_root2([Fraction(2, 5)])[0],
        "abs_minus1_root2": points_abs_minus1_root2([Fraction(3, 10)])[0],
        "re_half": ShapePoint(HALF, Fraction(1, 5)),
        "zeta": ZETA,
    }
