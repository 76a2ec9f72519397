"""SVG rendering of orbits in D and of refined meshes.  Presentation only."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .meshsim import MeshRun, point_shape_key, shape_key
from .orbit import OrbitRecord, is_terminal, terminal_quadruples
from .shapespace import zeta_radius_invariant

WIDTH, HEIGHT = 1000, 1200
_SCALE = 1300.0
_OX, _OY = 120.0, 1150.0
_PALETTE = ("#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")


def _px(x: float, y: float) -> tuple[float, float]:
    return (_OX + _SCALE * x, _OY - _SCALE * y)


def _arc_path(cx: float, cy: float, r: float, t0: float, t1: float, n: int = 96) -> str:
    pts = []
    for k in range(n + 1):
        t = t0 + (t1 - t0) * k / n
        pts.append(_px(cx + r * math.cos(t), cy + r * math.sin(t)))
    return "M " + " L ".join(f"{x:.2f} {y:.2f}" for x, y in pts)


def _domain_layers() -> list[str]:
    out = []
    top = math.sqrt(3) / 2
    # boundary of D: real segment, Re z = 1/2, arc |z - 1| = 1
    boundary = (
        f"M {_px(0, 0)[0]:.2f} {_px(0, 0)[1]:.2f} "
        f"L {_px(0.5, 0)[0]:.2f} {_px(0.5, 0)[1]:.2f} "
        f"L {_px(0.5, top)[0]:.2f} {_px(0.5, top)[1]:.2f} "
        + _arc_path(1, 0, 1, 2 * math.pi / 3, math.pi).replace("M", "L", 1)
        + " Z"
    )
    out.append(f'<path d="{boundary}" fill="#eef7ee" stroke="#2e7d32" stroke-width="2"/>')
    geo = 'fill="none" stroke="#3949ab" stroke-width="1.2"'
    x0, y0 = _px(0.25, 0)
    x1, y1 = _px(0.25, math.sqrt(7) / 4)
    out.append(f'<line x1="{x0:.2f}" y1="{y0:.2f}" x2="{x1:.2f}" y2="{y1:.2f}" {geo}/>')
    out.append(f'<path d="{_arc_path(0, 0, 0.5, 0, math.acos(0.25))}" {geo}/>')
    out.append(f'<path d="{_arc_path(0.5, 0, 0.5, math.pi / 2, math.pi)}" {geo}/>')
    labels = {"I": (0.375, 0.6), "II": (0.21, 0.525), "III": (0.15, 0.425),
              "IV": (0.41, 0.41), "V": (0.125, 0.1), "VI": (0.375, 0.1)}
    for name, (x, y) in labels.items():
        px, py = _px(x, y)
        out.append(f'<text x="{px:.1f}" y="{py:.1f}" font-size="22" fill="#9fa8da">{name}</text>')
    return out


def orbit_svg(orb: OrbitRecord, tangent_circles: bool = False) -> str:
    """Orbit points numbered in discovery order, with quadruple circles.

    Each terminal quadruple lies on a hyperbolic circle about zeta; its
    Euclidean centre is ``1/2 + (cosh r)/2 i`` with radius ``(sinh r)/2``.
    ``tangent_circles`` overlays, for every transient point, the circle
    through it tangent to the real axis at 0 (an unverified visual aid).
    """
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    parts += _domain_layers()
    cells = terminal_quadruples(orb)
    colour_of: dict[int, str] = {}
    for k, cell in enumerate(cells):
        colour = _PALETTE[k % len(_PALETTE)]
        cosh_r = 1.0 + float(zeta_radius_invariant(cell.class_points[0]))
        sinh_r = math.sqrt(max(cosh_r * cosh_r - 1.0, 0.0))
        cx, cy = _px(0.5, cosh_r / 2)
        r = _SCALE * sinh_r / 2
        if r > 0:
            parts.append(
                f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="{r:.2f}" fill="{colour}" '
                f'fill-opacity="0.08" stroke="{colour}" stroke-width="1"/>'
            )
        for j in cell.members:
            colour_of[j] = colour
    if tangent_circles:
        for p in orb.points:
            if is_terminal(p):
                continue
            c = complex(p)
            r0 = abs(c) ** 2 / (2 * c.imag)
            cx, cy = _px(0, r0)
            parts.append(
                f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="{_SCALE * r0:.2f}" fill="none" '
                'stroke="#bbbbbb" stroke-width="0.6" stroke-dasharray="4 3"/>'
            )
    for i, p in enumerate(orb.points):
        c = complex(p)
        px, py = _px(c.real, c.imag)
        colour = colour_of.get(i, "#222222")
        parts.append(f'<circle cx="{px:.2f}" cy="{py:.2f}" r="4" fill="{colour}"/>')
        parts.append(
            f'<text x="{px + 5:.2f}" y="{py - 5:.2f}" font-size="12" fill="{colour}">{i}</text>'
        )
    title = escape(f"LEB orbit of {orb.z}: l = {len(orb)}, q = {len(cells)}")
    parts.append(f'<text x="20" y="30" font-size="20">{title}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def mesh_svg(run: MeshRun) -> str:
    """The refined mesh of the final level; terminal-class triangles shaded."""
    orb = run.orbit
    keys = {point_shape_key(p): i for i, p in enumerate(orb.points)}
    terminal = [is_terminal(p) for p in orb.points]
    scale = 900.0
    ox, oy = 50.0, 900.0
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    for t in run.triangles:
        idx = keys[shape_key(t)]
        fill = "#90caf9" if terminal[idx] else "#ffffff"
        pts = " ".join(
            f"{ox + scale * float(v[0]):.3f},{oy - scale * float(v[1]):.3f}" for v in t.vertices
        )
        parts.append(f'<polygon points="{pts}" fill="{fill}" stroke="#333" stroke-width="0.4"/>')
    title = escape(f"{len(run.triangles)} triangles after {len(run.levels) - 1} steps of {orb.z}")
    parts.append(f'<text x="20" y="30" font-size="20">{title}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
