"""Orbits LEB(z), terminal quadruples, and the special constructions near 0."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    InconsistentTerminalSet,
    NotInTerminalRegion,
    OutsideVTilde,
    PointsNotEpsClose,
    SafetyCapExceeded,
)
from .exactnum import QuadVal
from .shapespace import (
    HALF,
    QUARTER,
    ZETA,
    ExactComplex,
    Geodesic,
    Region,
    ShapePoint,
    apply_L,
    apply_R,
    classify,
    hyperbolic_distance,
    in_terminal_region,
    in_v_tilde,
    on_genericity_geodesic,
    zeta_radius_invariant,
)

DEFAULT_ORBIT_CAP = 10**6
CONTAINMENT_SLACK = 1e-9


@dataclass
class OrbitRecord:
    """The finite orbit of ``points[0]`` in BFS order (L-child before R-child)."""

    points: list[ShapePoint]
    left: list[int]
    right: list[int]
    genericity: list[Geodesic]
    index: dict[ShapePoint, int] = field(repr=False)

    @property
    def z(self) -> ShapePoint:
        return self.points[0]

    def __len__(self) -> int:
        return len(self.points)

    @property
    def l(self) -> int:
        return len(self.points)

    def successors(self, i: int) -> tuple[int, int]:
        return self.left[i], self.right[i]

    def is_generic(self) -> bool:
        """No point has coinciding classes among ``w, L(w), R(w)``."""
        return all(
            len({i, self.left[i], self.right[i]}) == 3 for i in range(len(self.points))
        )

    def regions(self) -> list[Region]:
        return [classify(p) for p in self.points]

    def terminal_flags(self) -> list[bool]:
        return [is_terminal(p) for p in self.points]


def compute_orbit(z: ShapePoint, cap: int = DEFAULT_ORBIT_CAP) -> OrbitRecord:
    z = ShapePoint.of(z)
    points = [z]
    index = {z: 0}
    left: list[int] = []
    right: list[int] = []
    queue = deque([0])
    succ: dict[int, tuple[int, int]] = {}
    while queue:
        i = queue.popleft()
        p = points[i]
        pair = []
        for child in (apply_L(p), apply_R(p)):
            j = index.get(child)
            if j is None:
                if len(points) >= cap:
                    raise SafetyCapExceeded(f"orbit exceeded {cap} points")
                j = len(points)
                index[child] = j
                points.append(child)
                queue.append(j)
            pair.append(j)
        succ[i] = (pair[0], pair[1])
    for i in range(len(points)):
        left.append(succ[i][0])
        right.append(succ[i][1])
    genericity = [on_genericity_geodesic(p) for p in points]
    return OrbitRecord(points, left, right, genericity, index)


def is_terminal(z: ExactComplex) -> bool:
    """Whether ``z`` lies in the terminal region (orbit of at most 4 classes)."""
    return in_terminal_region(z)


@dataclass(frozen=True)
class TerminalQuadruple:
    members: tuple[int, ...]
    class_points: tuple[ShapePoint, ...]
    representative: int

    def __len__(self) -> int:
        return len(self.members)


def _closure(orb: OrbitRecord, start: int) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        i = stack.pop()
        for j in orb.successors(i):
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return seen


def terminal_quadruples(orb: OrbitRecord) -> list[TerminalQuadruple]:
    """Partition the terminal points of an orbit into their quadruples.

    The cell of a terminal point ``w`` is its own orbit ``{w, L w, R w, RR w}``
    (with repeats collapsed), read off the successor maps.  Cells are listed
    in order of their first member in the orbit.
    """
    terminal = [i for i, p in enumerate(orb.points) if is_terminal(p)]
    owner: dict[int, int] = {}
    cells: list[TerminalQuadruple] = []
    for i in terminal:
        if i in owner:
            continue
        cell = _closure(orb, i)
        if len(cell) > 4:
            raise InconsistentTerminalSet(
                f"terminal point #{i} generates {len(cell)} classes"
            )
        for j in cell:
            if j in owner or not is_terminal(orb.points[j]):
                raise InconsistentTerminalSet(f"terminal cell of #{i} leaks through #{j}")
            owner[j] = len(cells)
        members = tuple(sorted(cell))
        reps = [j for j in members if classify(orb.points[j]) is Region.I]
        if not reps:
            raise InconsistentTerminalSet(f"terminal cell {members} has no point in I")
        cells.append(
            TerminalQuadruple(members, tuple(orb.points[j] for j in members), reps[0])
        )
    return cells


def q_value(z: ShapePoint) -> int:
    return len(terminal_quadruples(compute_orbit(z)))


def quadruple_partition(orb: OrbitRecord) -> list[int | None]:
    """Per orbit point, the index of its terminal quadruple (None if transient)."""
    out: list[int | None] = [None] * len(orb)
    for k, cell in enumerate(terminal_quadruples(orb)):
        for j in cell.members:
            out[j] = k
    return out


def small_orbit_class(z: ShapePoint) -> int:
    """``l(z)`` for a point of the terminal region, read off its geodesics.

    The value is cross-checked against direct enumeration.
    """
    z = ShapePoint.of(z)
    if not is_terminal(z):
        raise NotInTerminalRegion(f"{z} is not in the terminal region")
    y2 = z.y2
    if z == ZETA:
        predicted = 1
    elif z.x * z.x + y2 == HALF or (z.x - 1) ** 2 + y2 == HALF:
        predicted = 2
    elif (z.x - HALF) ** 2 + y2 == QUARTER or z.x == HALF:
        predicted = 3
    else:
        predicted = 4
    actual = len(compute_orbit(z, cap=8))
    if actual != predicted:
        raise InconsistentTerminalSet(
            f"geodesic tests predict l = {predicted} but the orbit has {actual} classes"
        )
    return predicted


# --- constructions near the origin ------------------------------------------

def h_map(z: ShapePoint) -> ShapePoint:
    """``L(R(z))`` on the lens ``{z in V : |z - 1/3| <= 1/3}``; equals ``-z/(z-1)``."""
    if not in_v_tilde(z):
        raise OutsideVTilde(f"{z} is not in the lens of V")
    return apply_L(apply_R(z))


def tangent_circle_ratio(z: ExactComplex) -> QuadVal:
    """``|z|^2 / Im z``: the diameter of the circle through z tangent to R at 0."""
    return QuadVal(z.abs2()) / z.imag


def zeta_over_pow2(m: int) -> ShapePoint:
    """``zeta / 2^m``."""
    t = Fraction(1, 2 ** (m + 1))
    return ShapePoint(t, t, 1)


def high_q_witness(n: int, region_vi: bool = False) -> ShapePoint:
    """A point with more than ``n`` terminal quadruples.

    Uses ``zeta / 2^(m+2)`` with the least ``m >= 1`` such that ``2^m >= n``;
    with ``region_vi`` the image of that point under R, which lies in VI and
    has the same orbit up to one extra class.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    m = max(1, (n - 1).bit_length())
    z = zeta_over_pow2(m + 2)
    return apply_R(z) if region_vi else z


def perturbation_containment(z: ShapePoint, w: ShapePoint, eps: float) -> bool:
    """Whether every class of LEB(w) is within ``eps`` of some class of LEB(z)."""
    if not hyperbolic_distance(z, w) < eps:
        raise PointsNotEpsClose(f"d(z, w) = {hyperbolic_distance(z, w)} is not below {eps}")
    base = compute_orbit(z).points
    limit = eps + CONTAINMENT_SLACK
    for p in compute_orbit(w).points:
        if min(hyperbolic_distance(p, b) for b in base) > limit:
            return False
    return True


def quadruple_radii(orb: OrbitRecord) -> list[QuadVal | None]:
    """Per terminal cell, the common value of ``zeta_radius_invariant`` or None
    if the cell does not lie on one hyperbolic circle about zeta."""
    out: list[QuadVal | None] = []
    for cell in terminal_quadruples(orb):
        vals = {zeta_radius_invariant(p) for p in cell.class_points}
        out.append(vals.pop() if len(vals) == 1 else None)
    return out
