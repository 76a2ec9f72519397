"""Exact dynamics of longest-edge bisection on triangle shape space."""

from __future__ import annotations

from .errors import LebError
from .exactnum import QuadVal
from .graph import adjacency_matrix, build_graph
from .orbit import compute_orbit, q_value, terminal_quadruples
from .shapespace import ZETA, Region, ShapePoint, apply_L, apply_R, classify

__version__ = "0.1.0"

__all__ = [
    "LebError",
    "QuadVal",
    "Region",
    "ShapePoint",
    "ZETA",
    "adjacency_matrix",
    "apply_L",
    "apply_R",
    "build_graph",
    "classify",
    "compute_orbit",
    "q_value",
    "terminal_quadruples",
]
