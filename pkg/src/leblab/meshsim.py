"""Planar longest-edge bisection with exact coordinates.

Triangles live in the plane with coordinates in Q(sqrt d).  Children are
classified by the sorted triple of squared side lengths divided by the
largest, which identifies similarity classes (mirror images included)
without extracting any square root.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, UnmatchedShapeKey
from .exactnum import QuadVal
from .orbit import OrbitRecord, compute_orbit, is_terminal
from .shapespace import ShapePoint, apply_L, apply_R, squared_sides

DEFAULT_TRIANGLE_CAP = 2**16

Point2 = tuple[QuadVal, QuadVal]
ShapeKey = tuple[QuadVal, QuadVal, QuadVal]


def _sq_dist(p: Point2, q: Point2) -> QuadVal:
    dx = p[0] - q[0]
    dy = p[1] - q[1]
    return dx * dx + dy * dy


def _signed_area2(a: Point2, b: Point2, c: Point2) -> QuadVal:
    """Twice the signed area."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1])


@dataclass(frozen=True)
class PlanarTriangle:
    v0: Point2
    v1: Point2
    v2: Point2

    def __post_init__(self) -> None:
        if not _signed_area2(self.v0, self.v1, self.v2):
            raise InputError("collinear vertices")

    @property
    def vertices(self) -> tuple[Point2, Point2, Point2]:
        return (self.v0, self.v1, self.v2)

    def squared_edges(self) -> tuple[QuadVal, QuadVal, QuadVal]:
        """Squared lengths of edges v0v1, v1v2, v2v0."""
        return (
            _sq_dist(self.v0, self.v1),
            _sq_dist(self.v1, self.v2),
            _sq_dist(self.v2, self.v0),
        )

    def area2(self) -> QuadVal:
        a = _signed_area2(self.v0, self.v1, self.v2)
        return a if a.sign() > 0 else -a


def shape_key_from_squares(sq: tuple[QuadVal, QuadVal, QuadVal]) -> ShapeKey:
    big, mid, small = sorted(sq, reverse=True)
    return (QuadVal(1, 0, big.d), mid / big, small / big)


def shape_key(t: PlanarTriangle) -> ShapeKey:
    return shape_key_from_squares(t.squared_edges())


def point_shape_key(z: ShapePoint) -> ShapeKey:
    one, far, near = squared_sides(z)
    return (QuadVal(one, 0, z.d), QuadVal(far, 0, z.d), QuadVal(near, 0, z.d))


def seed_triangle(z: ShapePoint, mirror: bool = False) -> PlanarTriangle:
    """The triangle ``0, 1, z``; with ``mirror`` its reflection ``0, 1, 1 - conj z``."""
    d = z.d
    x = 1 - z.x if mirror else z.x
    return PlanarTriangle(
        (QuadVal(0, 0, d), QuadVal(0, 0, d)),
        (QuadVal(1, 0, d), QuadVal(0, 0, d)),
        (QuadVal(x, 0, d), QuadVal(0, z.s, d)),
    )


_EDGES = ((0, 1, 2), (1, 2, 0), (2, 0, 1))


def bisect(t: PlanarTriangle, check: bool = True) -> tuple[PlanarTriangle, PlanarTriangle]:
    """Split along the median to a longest edge.

    Ties between equal longest edges go to the lowest edge index in the
    order v0v1, v1v2, v2v0.
    """
    sq = t.squared_edges()
    k = 0
    for e in (1, 2):
        if sq[e] > sq[k]:
            k = e
    i, j, opp = _EDGES[k]
    vs = t.vertices
    a, b, c = vs[i], vs[j], vs[opp]
    m = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
    left = PlanarTriangle(a, m, c)
    right = PlanarTriangle(m, b, c)
    if check:
        whole = t.area2()
        if left.area2() * 2 != whole or right.area2() * 2 != whole:
            raise AssertionError("bisection did not halve the area")
    return left, right


def min_angle_from_squares(sq) -> float:
    """Smallest interior angle (radians) from squared side lengths."""
    a2, b2, c2 = sorted(float(v) for v in sq)
    # smallest angle is opposite the shortest side
    cos = (b2 + c2 - a2) / (2.0 * math.sqrt(b2 * c2))
    return math.acos(max(-1.0, min(1.0, cos)))


@dataclass
class MeshRun:
    orbit: OrbitRecord
    levels: list[list[int]]
    min_angle: float
    seed_min_angle: float
    triangles: list[PlanarTriangle]

    def counts(self, j: int | None = None) -> list[int]:
        return self.levels[-1 if j is None else j]


def _check_cap(j: int, cap: int) -> None:
    if j < 0:
        raise InputError("step count must be nonnegative")
    if 2**j > cap:
        raise InputError(f"2^{j} triangles exceed the cap of {cap}")


def run_mesh(
    z: ShapePoint,
    j: int,
    cap: int = DEFAULT_TRIANGLE_CAP,
    orbit: OrbitRecord | None = None,
    mirror: bool = False,
    check: bool = True,
) -> MeshRun:
    """Refine the seed of ``z`` uniformly ``j`` times, recording class counts."""
    _check_cap(j, cap)
    orb = orbit if orbit is not None else compute_orbit(z)
    keys = {point_shape_key(p): i for i, p in enumerate(orb.points)}
    seed = seed_triangle(z, mirror)
    seed_angle = min_angle_from_squares(seed.squared_edges())
    tris = [seed]
    levels = []
    min_angle = seed_angle
    for step in range(j + 1):
        counts = [0] * len(orb)
        for t in tris:
            sq = t.squared_edges()
            idx = keys.get(shape_key_from_squares(sq))
            if idx is None:
                raise UnmatchedShapeKey(f"step {step}: triangle {sq} matches no orbit class")
            counts[idx] += 1
            min_angle = min(min_angle, min_angle_from_squares(sq))
        levels.append(counts)
        if step < j:
            tris = [c for t in tris for c in bisect(t, check)]
    return MeshRun(orb, levels, min_angle, seed_angle, tris)


def simulate(z: ShapePoint, j: int, cap: int = DEFAULT_TRIANGLE_CAP) -> list[int]:
    """Class counts (orbit order) after ``j`` rounds of planar refinement."""
    return run_mesh(z, j, cap).counts()


def tree_expand_levels(
    z: ShapePoint, j: int, cap: int = DEFAULT_TRIANGLE_CAP, orbit: OrbitRecord | None = None
) -> list[list[int]]:
    """Class counts of all length-k words in {L, R} applied to z, k = 0..j.

    Works purely in shape space through ``apply_L``/``apply_R``; words ending
    at the same class are merged as a multiset at each level.
    """
    _check_cap(j, cap)
    orb = orbit if orbit is not None else compute_orbit(z)
    current: Counter = Counter({z: 1})
    levels = []
    for step in range(j + 1):
        counts = [0] * len(orb)
        for p, c in current.items():
            counts[orb.index[p]] += c
        levels.append(counts)
        if step < j:
            nxt: Counter = Counter()
            for p, c in current.items():
                nxt[apply_L(p)] += c
                nxt[apply_R(p)] += c
            current = nxt
    return levels


def tree_expand(z: ShapePoint, j: int, cap: int = DEFAULT_TRIANGLE_CAP) -> list[int]:
    return tree_expand_levels(z, j, cap)[-1]


def terminal_area_fraction(
    z: ShapePoint, j: int, cap: int = DEFAULT_TRIANGLE_CAP, method: str = "planar"
) -> Fraction:
    """Share of the area of ``z`` covered by terminal classes after ``j`` steps."""
    if method == "planar":
        run = run_mesh(z, j, cap, check=False)
        orb, counts = run.orbit, run.counts()
    elif method == "tree":
        orb = compute_orbit(z)
        counts = tree_expand_levels(z, j, cap, orb)[-1]
    else:
        raise InputError(f"unknown method {method!r}")
    term = sum(c for p, c in zip(orb.points, counts) if is_terminal(p))
    return Fraction(term, 2**j)
