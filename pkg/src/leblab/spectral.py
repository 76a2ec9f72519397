"""Spectral analysis of the bisection-graph adjacency matrix.

Eigenspace dimensions for +-2 are exact (fraction-free elimination over the
integers); the full spectrum and the limit distributions are floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ConvergenceFailure, InputError, IterationLimit
from .graph import AdjMatrix, BisectionGraph

DENSE_LIMIT = 2000
ITER_TOL = 1e-13
ITER_CAP = 10**5
XI_MARGIN = 1e-6
PM2_EXCLUSION = 1e-6
CONJECTURE_SET = (2.0, -2.0, 2**0.5, -(2**0.5), 1.0, -1.0, 0.0)
CONJECTURE_TOL = 1e-6
DIAGONALIZABLE_COND = 1e8


@dataclass
class CountVector:
    counts: list[int]
    step: int

    def total(self) -> int:
        return sum(self.counts)

    def probabilities(self) -> list[Fraction]:
        return [Fraction(c, 2**self.step) for c in self.counts]


def _columns(A: AdjMatrix) -> list[list[int]]:
    """Row indices of the nonzero entries of each column (with multiplicity)."""
    cols: list[list[int]] = [[] for _ in range(A.n)]
    for i, row in enumerate(A.entries):
        for j, a in enumerate(row):
            cols[j].extend([i] * a)
    return cols


def counts_sequence(A: AdjMatrix, j: int) -> list[CountVector]:
    """Exact ``A^k e1`` for ``k = 0..j``."""
    if j < 0:
        raise InputError("step count must be nonnegative")
    cols = _columns(A)
    v = [0] * A.n
    v[0] = 1
    out = [CountVector(list(v), 0)]
    for k in range(1, j + 1):
        nxt = [0] * A.n
        for col, c in enumerate(v):
            if c:
                for i in cols[col]:
                    nxt[i] += c
        v = nxt
        out.append(CountVector(list(v), k))
    return out


def counts_at_step(A: AdjMatrix, j: int) -> CountVector:
    return counts_sequence(A, j)[-1]


def collapse_counts(cv: CountVector, g: BisectionGraph) -> list[int]:
    """Sum split copies back onto orbit classes."""
    out = [0] * len(g.orbit)
    for v, c in zip(g.collapse, cv.counts):
        out[v] += c
    return out


def bareiss_rank(matrix: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    m = [list(row) for row in matrix]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    rank = 0
    prev = 1
    for c in range(cols):
        if rank == rows:
            break
        piv = next((r for r in range(rank, rows) if m[r][c]), None)
        if piv is None:
            continue
        if piv != rank:
            m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][c]
        prow = m[rank]
        for r in range(rank + 1, rows):
            row = m[r]
            f = row[c]
            if f:
                for k in range(c + 1, cols):
                    row[k] = (p * row[k] - f * prow[k]) // prev
            else:
                for k in range(c + 1, cols):
                    if row[k]:
                        row[k] = (p * row[k]) // prev
            row[c] = 0
        prev = p
        rank += 1
    return rank


def exact_eigenspace_dim(A: AdjMatrix, lam: int) -> int:
    """``n - rank(A - lam I)``, computed exactly."""
    shifted = [
        [a - (lam if i == j else 0) for j, a in enumerate(row)]
        for i, row in enumerate(A.entries)
    ]
    return A.n - bareiss_rank(shifted)


def spectrum(A: AdjMatrix, dense_limit: int = DENSE_LIMIT) -> np.ndarray:
    """All eigenvalues (LAPACK nonsymmetric Hessenberg QR)."""
    if A.n > dense_limit:
        raise InputError(f"matrix of size {A.n} exceeds the dense limit {dense_limit}")
    try:
        vals = np.linalg.eigvals(A.to_numpy())
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    if not np.all(np.isfinite(vals)):
        raise ConvergenceFailure("eigenvalue computation produced non-finite values")
    return vals


def spectral_radius(vals: np.ndarray) -> float:
    return float(np.max(np.abs(vals)))


def limit_distributions(
    A: AdjMatrix, tol: float = ITER_TOL, cap: int = ITER_CAP
) -> tuple[np.ndarray, np.ndarray, int]:
    """``(w_even, w_odd, iterations)`` from iterating ``(A/2)^2`` on ``e1``."""
    half = A.to_numpy() / 2.0
    sq = half @ half
    v = np.zeros(A.n)
    v[0] = 1.0
    for it in range(1, cap + 1):
        nxt = sq @ v
        change = float(np.max(np.abs(nxt - v)))
        v = nxt
        if change < tol:
            return v, half @ v, it
    raise IterationLimit(f"no convergence after {cap} iterations")


def second_modulus(vals: np.ndarray, exclusion: float = PM2_EXCLUSION) -> float:
    """Largest ``|lambda|`` among eigenvalues not within ``exclusion`` of +-2."""
    keep = [abs(v) for v in vals if abs(v - 2) > exclusion and abs(v + 2) > exclusion]
    return max(keep, default=0.0)


def convergence_rate(A: AdjMatrix, vals: np.ndarray | None = None) -> float:
    """Exponential rate ``xi`` bounding the mass outside the +-2 eigenspaces."""
    if vals is None:
        vals = spectrum(A)
    xi = second_modulus(vals) / 2.0 + XI_MARGIN
    return min(xi, 1.0 - XI_MARGIN)


def _bipartite(g: BisectionGraph) -> bool:
    adj: list[set[int]] = [set() for _ in range(g.n)]
    for s, t, _ in g.edges:
        adj[s].add(t)
        adj[t].add(s)
    colour = [-1] * g.n
    for root in range(g.n):
        if colour[root] != -1:
            continue
        colour[root] = 0
        stack = [root]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if colour[w] == -1:
                    colour[w] = 1 - colour[v]
                    stack.append(w)
                elif colour[w] == colour[v]:
                    return False
    return True


@dataclass
class ConjectureFlags:
    spectrum_in_set: bool
    bipartite: bool
    diagonalizable: bool
    eigvec_condition: float

    def to_json(self) -> dict:
        return {
            "spectrum_in_set": self.spectrum_in_set,
            "bipartite": self.bipartite,
            "diagonalizable": self.diagonalizable,
            "eigvec_condition": self.eigvec_condition,
        }


def conjecture_report(A: AdjMatrix, g: BisectionGraph, vals: np.ndarray | None = None) -> ConjectureFlags:
    """Diagnostics for three open questions about the bisection graph.

    Report only: nothing downstream may assert on these flags.
    """
    M = A.to_numpy()
    if vals is None:
        vals = spectrum(A)
    in_set = all(min(abs(v - c) for c in CONJECTURE_SET) <= CONJECTURE_TOL for v in vals)
    _, vecs = np.linalg.eig(M)
    with np.errstate(all="ignore"):
        cond = float(np.linalg.cond(vecs))
    if not np.isfinite(cond):
        cond = float("inf")
    return ConjectureFlags(in_set, _bipartite(g), cond < DIAGONALIZABLE_COND, cond)


@dataclass
class SpectralSummary:
    rho: float
    eigenvalues: list[complex]
    dim_E2: int
    dim_Eneg2: int
    xi: float
    flags: ConjectureFlags
    w_even: list[float]
    w_odd: list[float]

    def to_json(self) -> dict:
        return {
            "rho": self.rho,
            "eigenvalues": [[round(v.real, 12), round(v.imag, 12)] for v in self.eigenvalues],
            "dim_E2": self.dim_E2,
            "dim_Eneg2": self.dim_Eneg2,
            "xi": self.xi,
            "conjecture_flags": self.flags.to_json(),
            "w_even": self.w_even,
            "w_odd": self.w_odd,
        }


def summarize(A: AdjMatrix, g: BisectionGraph) -> SpectralSummary:
    vals = spectrum(A)
    order = np.lexsort((-vals.imag, -vals.real, -np.round(np.abs(vals), 9)))
    vals = vals[order]
    w_even, w_odd, _ = limit_distributions(A)
    return SpectralSummary(
        rho=spectral_radius(vals),
        eigenvalues=[complex(v) for v in vals],
        dim_E2=exact_eigenspace_dim(A, 2),
        dim_Eneg2=exact_eigenspace_dim(A, -2),
        xi=convergence_rate(A, vals),
        flags=conjecture_report(A, g, vals),
        w_even=[float(x) for x in w_even],
        w_odd=[float(x) for x in w_odd],
    )
