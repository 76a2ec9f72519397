"""The bisection graph of an orbit and its adjacency matrix.

Non-generic orbit points are resolved by vertex splitting so that the graph
is simple with out-degree exactly two:

* a point with a single loop ``X(w) = w`` becomes a 2-cycle ``w1 <-> w2``
  labelled X, both copies keeping the other outgoing edge; incoming edges go
  to ``w1``;
* a pair ``w`` (``L w = w``) and ``w'`` (``R w' = w'``) with ``R w = w'`` and
  ``L w' = w`` becomes two 2-cycles joined by ``w_i -R-> w'_i`` and
  ``w'_i -L-> w_i``; incoming edges go to ``w1`` and ``w'1``;
* the target ``w`` of a double edge ``L w' = R w' = w`` is split into ``w_L``
  and ``w_R`` receiving the L-labelled and R-labelled incoming edges.

The right isosceles class zeta, where ``L = R = id``, is the pair rule with
``w = w'`` and yields four vertices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import UnresolvedNonGenericPattern
from .orbit import OrbitRecord, terminal_quadruples

PLAIN = "plain"
S1 = "s1"
S2 = "s2"
SL = "sL"
SR = "sR"
# second pair of copies for zeta, which is its own loop partner
S1P = "s1'"
S2P = "s2'"


@dataclass(frozen=True)
class GraphVertex:
    orbit_index: int
    split_tag: str = PLAIN

    def label(self) -> str:
        return str(self.orbit_index) if self.split_tag == PLAIN else f"{self.orbit_index}{self.split_tag}"


@dataclass
class BisectionGraph:
    vertices: list[GraphVertex]
    edges: list[tuple[int, int, str]]
    orbit: OrbitRecord

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def collapse(self) -> list[int]:
        return [v.orbit_index for v in self.vertices]

    def out_edges(self, v: int) -> dict[str, int]:
        return {lab: dst for src, dst, lab in self.edges if src == v}

    def successors(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.vertices]
        for src, dst, _ in self.edges:
            out[src].append(dst)
        return out

    def vertex_index(self, orbit_index: int, tag: str = PLAIN) -> int:
        for k, v in enumerate(self.vertices):
            if v.orbit_index == orbit_index and v.split_tag == tag:
                return k
        raise KeyError((orbit_index, tag))

    def to_json(self) -> dict:
        return {
            "vertices": [
                {"id": k, "orbit_index": v.orbit_index, "split_tag": v.split_tag}
                for k, v in enumerate(self.vertices)
            ],
            "edges": [{"src": s, "dst": t, "label": lab} for s, t, lab in self.edges],
            "collapse": self.collapse,
        }


def _resolution_plan(orb: OrbitRecord) -> dict[int, str]:
    """Classify each non-generic orbit point by the rule that splits it."""
    plan: dict[int, str] = {}
    n = len(orb)
    for i in range(n):
        li, ri = orb.left[i], orb.right[i]
        if li == i and ri == i:
            plan[i] = "fixed"
        elif li == i:
            # L-loop: must be paired with an R-loop partner
            j = ri
            if orb.right[j] != j or orb.left[j] != i:
                raise UnresolvedNonGenericPattern(f"L-loop at #{i} has no R-loop partner")
            plan[i] = "pair_L"
        elif ri == i:
            j = li
            if orb.left[j] == j and orb.right[j] == i:
                plan[i] = "pair_R"
            else:
                plan[i] = "loop_R"
    for i in range(n):
        li, ri = orb.left[i], orb.right[i]
        if li == ri and li != i:
            prev = plan.get(li)
            if prev not in (None, "double"):
                raise UnresolvedNonGenericPattern(
                    f"#{li} is a double-edge target and also {prev}"
                )
            plan[li] = "double"
    return plan


def build_graph(orb: OrbitRecord) -> BisectionGraph:
    plan = _resolution_plan(orb)
    copies: dict[int, list[str]] = {}
    for i in range(len(orb)):
        kind = plan.get(i)
        if kind is None:
            copies[i] = [PLAIN]
        elif kind == "fixed":
            copies[i] = [S1, S2, S1P, S2P]
        elif kind == "double":
            copies[i] = [SL, SR]
        else:
            copies[i] = [S1, S2]

    vertices: list[GraphVertex] = []
    vid: dict[tuple[int, str], int] = {}
    for i in range(len(orb)):
        for tag in copies[i]:
            vid[(i, tag)] = len(vertices)
            vertices.append(GraphVertex(i, tag))

    def entry(j: int, label: str) -> int:
        """Vertex receiving an edge with ``label`` into orbit point j."""
        kind = plan.get(j)
        if kind is None:
            return vid[(j, PLAIN)]
        if kind == "double":
            return vid[(j, SL if label == "L" else SR)]
        return vid[(j, S1)]

    edges: list[tuple[int, int, str]] = []
    for i in range(len(orb)):
        kind = plan.get(i)
        li, ri = orb.left[i], orb.right[i]
        if kind is None or kind == "double":
            for tag in copies[i]:
                src = vid[(i, tag)]
                edges.append((src, entry(li, "L"), "L"))
                edges.append((src, entry(ri, "R"), "R"))
        elif kind == "loop_R":
            a, b = vid[(i, S1)], vid[(i, S2)]
            edges += [(a, entry(li, "L"), "L"), (a, b, "R")]
            edges += [(b, entry(li, "L"), "L"), (b, a, "R")]
        elif kind in ("pair_L", "fixed"):
            # w = i has the L-loop; w' carries the R-loop
            if kind == "fixed":
                w1, w2, p1, p2 = (vid[(i, t)] for t in (S1, S2, S1P, S2P))
            else:
                w1, w2 = vid[(i, S1)], vid[(i, S2)]
                p1, p2 = vid[(ri, S1)], vid[(ri, S2)]
            edges += [(w1, w2, "L"), (w1, p1, "R"), (w2, w1, "L"), (w2, p2, "R")]
            if kind == "fixed":
                edges += [(p1, p2, "R"), (p1, w1, "L"), (p2, p1, "R"), (p2, w2, "L")]
        elif kind == "pair_R":
            # emitted together with its partner's L-side edges below
            j = li
            p1, p2 = vid[(i, S1)], vid[(i, S2)]
            w1, w2 = vid[(j, S1)], vid[(j, S2)]
            edges += [(p1, w1, "L"), (p1, p2, "R"), (p2, w2, "L"), (p2, p1, "R")]
        else:  # pragma: no cover - plan only produces the kinds above
            raise UnresolvedNonGenericPattern(kind)
    edges.sort(key=lambda e: (e[0], e[2]))
    return BisectionGraph(vertices, edges, orb)


def entry_vertex(g: BisectionGraph) -> int:
    """Vertex carrying the initial triangle: always vertex 0 by construction."""
    return 0


@dataclass
class AdjMatrix:
    """Integer adjacency matrix with ``A[i][j] = 1`` iff edge ``j -> i``."""

    n: int
    entries: list[list[int]]

    def column_sums(self) -> list[int]:
        return [sum(self.entries[i][j] for i in range(self.n)) for j in range(self.n)]

    def to_numpy(self):
        import numpy as np

        return np.array(self.entries, dtype=float).reshape(self.n, self.n)


def adjacency_matrix(g: BisectionGraph) -> AdjMatrix:
    n = g.n
    a = [[0] * n for _ in range(n)]
    for src, dst, _ in g.edges:
        a[dst][src] += 1
    return AdjMatrix(n, a)


def scc(g: BisectionGraph) -> list[list[int]]:
    """Strongly connected components (iterative Tarjan), each sorted.

    Components come out in reverse topological order: sinks first.
    """
    succ = g.successors()
    n = g.n
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, k = work.pop()
            if k == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            recurse = False
            while k < len(succ[v]):
                w = succ[v][k]
                k += 1
                if index[w] == -1:
                    work.append((v, k))
                    work.append((w, 0))
                    recurse = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return comps


def is_k22(g: BisectionGraph, verts: list[int]) -> bool:
    """Whether ``verts`` induce a directed K_{2,2} closed under both edges."""
    if len(verts) != 4:
        return False
    vs = set(verts)
    succ = g.successors()
    for v in verts:
        if set(succ[v]) - vs or len(set(succ[v])) != 2:
            return False
    # two parts, each mapping onto the other
    a = verts[0]
    other = set(succ[a])
    part = vs - other
    return all(set(succ[v]) == other for v in part) and all(
        set(succ[v]) == part for v in other
    )


def terminal_vertex_sets(g: BisectionGraph) -> list[list[int]]:
    """Graph vertices of each terminal quadruple, in quadruple order."""
    cells = terminal_quadruples(g.orbit)
    owner = {}
    for k, cell in enumerate(cells):
        for j in cell.members:
            owner[j] = k
    out: list[list[int]] = [[] for _ in cells]
    for v, vert in enumerate(g.vertices):
        k = owner.get(vert.orbit_index)
        if k is not None:
            out[k].append(v)
    return out


def reachable_from(g: BisectionGraph, start: int = 0) -> set[int]:
    succ = g.successors()
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in succ[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def to_dot(g: BisectionGraph, name: str = "G_LEB") -> str:
    """Graphviz text; L edges solid, R edges dashed, quadruples clustered."""
    lines = [f"digraph {json.dumps(name)} {{", "  node [shape=circle, fontsize=10];"]
    clustered: set[int] = set()
    for k, verts in enumerate(terminal_vertex_sets(g)):
        lines.append(f"  subgraph cluster_q{k} {{")
        lines.append(f'    label="quadruple {k}"; style=filled; color="#e8f0ff";')
        for v in verts:
            lines.append(f'    v{v} [label="{g.vertices[v].label()}"];')
            clustered.add(v)
        lines.append("  }")
    for v, vert in enumerate(g.vertices):
        if v not in clustered:
            extra = ", shape=doublecircle" if v == 0 else ""
            lines.append(f'  v{v} [label="{vert.label()}"{extra}];')
    for src, dst, lab in g.edges:
        style = "solid" if lab == "L" else "dashed"
        lines.append(f'  v{src} -> v{dst} [label="{lab}", style={style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
