"""The symmetric tube of a graph: cells, canonical spanning tree, basis.

Cell naming:
  Z(v, e)     -- pair {vertex v, point on edge e near v};  e incident to v
  W(v, a, b)  -- pair of near-v points on two incident edges a < b
  X(e)        -- sweep of a near-tangent pair along edge e
  Y(v, a, b)  -- the point on incident edge a stays put, the partner moves
                 between v and the near-v point of incident edge b

X(e) is oriented tail -> head with e.  Y(v, a, b) is oriented by edge b:
from Z toward W when v is b's tail, from W toward Z when v is b's head.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from collections import deque
from itertools import combinations

from .graphs import Graph, SpanningTree, EdgeCycle, GraphError, canonical_spanning_tree


class TubeError(ValueError):
    pass


@dataclass(frozen=True)
class TubeVertex:
    kind: str          # "Z" or "W"
    vertex: int
    edge_a: int
    edge_b: int = 0    # unused for Z; for W, edge_a < edge_b

    def __post_init__(self):
        if self.kind == "W" and not self.edge_a < self.edge_b:
            raise TubeError("W cell edges must be ordered")

    def label(self) -> str:
        if self.kind == "Z":
            return f"Z[v{self.vertex};e{self.edge_a}]"
        return f"W[v{self.vertex};e{self.edge_a},e{self.edge_b}]"


def Z(v: int, e: int) -> TubeVertex:
    return TubeVertex("Z", v, e)


def W(v: int, a: int, b: int) -> TubeVertex:
    lo, hi = min(a, b), max(a, b)
    return TubeVertex("W", v, lo, hi)


@dataclass(frozen=True)
class TubeEdge:
    kind: str          # "X" or "Y"
    vertex: int        # 0 for X
    edge_a: int        # X: the edge id; Y: the fixed-side edge
    edge_b: int = 0    # Y: the moving-side edge
    # oriented endpoints, traversal u -> v is the positive direction
    u: TubeVertex = field(compare=False, repr=False, default=None)
    v: TubeVertex = field(compare=False, repr=False, default=None)

    def label(self) -> str:
        if self.kind == "X":
            return f"X[e{self.edge_a}]"
        return f"Y[v{self.vertex};fix e{self.edge_a},move e{self.edge_b}]"

    def ends(self) -> tuple[TubeVertex, TubeVertex]:
        return (self.u, self.v)


@dataclass(frozen=True)
class SymmetricTube:
    graph: Graph
    vertices: tuple[TubeVertex, ...]
    edges: tuple[TubeEdge, ...]
    _by_key: dict = field(compare=False, repr=False, default_factory=dict)

    def __post_init__(self):
        object.__setattr__(
            self, "_by_key",
            {(e.kind, e.vertex, e.edge_a, e.edge_b): e for e in self.edges})

    def x_edge(self, eid: int) -> TubeEdge:
        return self._by_key[("X", 0, eid, 0)]

    def y_edge(self, v: int, fixed: int, moving: int) -> TubeEdge:
        return self._by_key[("Y", v, fixed, moving)]

    def adjacency(self, edge_subset=None):
        """cell -> list of (tube edge, +1 if leaving via u->v)."""
        adj: dict[TubeVertex, list] = {c: [] for c in self.vertices}
        edges = self.edges if edge_subset is None else edge_subset
        for e in edges:
            adj[e.u].append((e, +1))
            adj[e.v].append((e, -1))
        return adj


@dataclass(frozen=True)
class BasisLabel:
    """One generator: a non-tree tube edge, normalized name included."""
    kind: str              # "X" or "Y"
    edge: TubeEdge
    name: str
    # Y only: vertex, local neighbor indices (moving j < fixed k)
    vertex: int = 0
    local_j: int = 0
    local_k: int = 0


@dataclass(frozen=True)
class WuBasis:
    tube: "TubeComplex"
    labels: tuple[BasisLabel, ...]

    def names(self) -> list[str]:
        return [b.name for b in self.labels]


@dataclass(frozen=True)
class TubeComplex:
    """Symmetric tube together with its canonical spanning tree and basis."""
    tube: SymmetricTube
    tree_edges: frozenset        # of TubeEdge
    graph_tree: SpanningTree
    _parent: dict = field(compare=False, repr=False, default_factory=dict)

    def __post_init__(self):
        # BFS tree structure over tree edges, rooted at the first tube vertex
        root = self.tube.vertices[0]
        adj = self.tube.adjacency(self.tree_edges)
        parent: dict[TubeVertex, tuple] = {root: None}
        q = deque([root])
        while q:
            c = q.popleft()
            for e, sgn in adj[c]:
                nxt = e.v if sgn > 0 else e.u
                if nxt not in parent:
                    parent[nxt] = (e, sgn, c)
                    q.append(nxt)
        if len(parent) != len(self.tube.vertices):
            raise TubeError("tube tree does not span the tube")
        object.__setattr__(self, "_parent", parent)

    @property
    def non_tree_edges(self) -> list[TubeEdge]:
        return [e for e in self.tube.edges if e not in self.tree_edges]

    def tree_path(self, a: TubeVertex, b: TubeVertex):
        """Path a -> b within the tree, as (tube edge, direction) steps."""
        up_a, up_b = self._chain(a), self._chain(b)
        set_b = {c for c, _ in up_b}
        lca = next(c for c, _ in up_a if c in set_b)
        part1 = []
        for c, step in up_a:
            if c == lca:
                break
            e, sgn, _ = step
            part1.append((e, -sgn))   # walk child -> parent: against BFS entry
        part2 = []
        for c, step in up_b:
            if c == lca:
                break
            e, sgn, _ = step
            part2.append((e, sgn))
        return part1 + list(reversed(part2))

    def _chain(self, c: TubeVertex):
        out = []
        while self._parent[c] is not None:
            step = self._parent[c]
            out.append((c, step))
            c = step[2]
        out.append((c, None))
        return out


def build_symmetric_tube(g: Graph) -> SymmetricTube:
    cells: list[TubeVertex] = []
    for e in g.edges:
        cells.append(Z(e.tail, e.id))
        cells.append(Z(e.head, e.id))
    for v in g.vertices():
        for a, b in combinations(g.incident_edges(v), 2):
            cells.append(W(v, a, b))
    edges: list[TubeEdge] = []
    for e in g.edges:
        edges.append(TubeEdge("X", 0, e.id, 0, u=Z(e.tail, e.id), v=Z(e.head, e.id)))
    for v in g.vertices():
        inc = g.incident_edges(v)
        for a in inc:
            for b in inc:
                if a == b:
                    continue
                zc, wc = Z(v, a), W(v, a, b)
                if g.edge(b).tail == v:     # moving point leaves v with b
                    edges.append(TubeEdge("Y", v, a, b, u=zc, v=wc))
                else:
                    edges.append(TubeEdge("Y", v, a, b, u=wc, v=zc))
    return SymmetricTube(g, tuple(cells), tuple(edges))


def tube_spanning_tree(tube: SymmetricTube,
                       graph_tree: SpanningTree | None = None) -> TubeComplex:
    """Canonical spanning tree: X edges over the graph tree plus, per vertex,
    the star-pattern tree transported along the neighbor order."""
    g = tube.graph
    if graph_tree is None:
        graph_tree = canonical_spanning_tree(g)
    tree: set[TubeEdge] = set()
    for eid in graph_tree.edge_ids:
        tree.add(tube.x_edge(eid))
    for v in g.vertices():
        inc = g.incident_edges(v)     # i_1 < i_2 < ... < i_d
        d = len(inc)
        if d < 2:
            continue
        last = inc[-1]
        for j in range(d - 1):
            tree.add(tube.y_edge(v, last, inc[j]))      # fixed = i_d
            tree.add(tube.y_edge(v, inc[j], last))      # moving = i_d
        for j in range(d - 1):
            for k in range(j + 1, d - 1):
                tree.add(tube.y_edge(v, inc[j], inc[k]))  # fixed j < moving k
    tc = TubeComplex(tube, frozenset(tree), graph_tree)
    expected = len(tube.vertices) - 1
    if len(tree) != expected:
        raise TubeError(f"tube tree has {len(tree)} edges, expected {expected}")
    return tc


def rank(g: Graph) -> int:
    """Number of independent generators of the tube's first cohomology."""
    total = sum(g.degree(v) ** 2 for v in g.vertices())
    value = 1 - 2 * g.num_edges + total // 2
    if total % 2:
        raise TubeError("degree-square sum must be even")   # handshake lemma
    return value


def wu_basis(tc: TubeComplex) -> WuBasis:
    g = tc.tube.graph
    labels: list[BasisLabel] = []
    for eid in tc.graph_tree.non_tree_edges:
        e = tc.tube.x_edge(eid)
        labels.append(BasisLabel("X", e, f"X{eid}"))
    for v in g.vertices():
        inc = g.incident_edges(v)
        d = len(inc)
        if d < 3:
            continue
        for j in range(1, d):           # local indices 1..d-1, j < k
            for k in range(j + 1, d):
                edge = tc.tube.y_edge(v, inc[k - 1], inc[j - 1])
                labels.append(BasisLabel(
                    "Y", edge, f"Y{v}[{k},{j}]", vertex=v, local_j=j, local_k=k))
    # sanity: labels are exactly the non-tree tube edges
    non_tree = set(tc.non_tree_edges)
    if {b.edge for b in labels} != non_tree or len(labels) != len(non_tree):
        raise TubeError("basis labels do not match non-tree tube edges")
    if len(labels) != rank(g):
        raise TubeError("basis size disagrees with rank formula")
    return WuBasis(tc, tuple(labels))


def fundamental_cycle_tube(tc: TubeComplex, edge: TubeEdge):
    """Non-tree tube edge traversed positively, closed by the tree path
    v -> u.  Returns (tube edge, direction) steps."""
    if edge in tc.tree_edges:
        raise TubeError(f"{edge.label()} is a tree edge")
    return [(edge, +1)] + tc.tree_path(edge.v, edge.u)


def basis_cycle(tc: TubeComplex, label: BasisLabel):
    """The evaluation cycle for a basis label.

    X labels: the tube cycle realizing the graph fundamental cycle of the
    non-tree graph edge (pair sweeps around that cycle once).
    Y labels: the block cycle traversing the non-tree Y edge from its Z cell
    to its W cell (moving point leaving the vertex), closed in the tree.
    This fixed geometric direction, not the stored edge orientation, pins the
    sign convention.
    """
    if label.kind == "X":
        from .graphs import fundamental_cycle
        gamma = fundamental_cycle(tc.graph_tree, label.edge.edge_a)
        return tube_cycle_over_graph_cycle(tc.tube, gamma)
    e = label.edge
    zc = e.u if e.u.kind == "Z" else e.v
    wc = e.v if e.u.kind == "Z" else e.u
    direction = +1 if e.u.kind == "Z" else -1     # make traversal Z -> W
    return [(e, direction)] + tc.tree_path(wc, zc)


def tube_cycle_over_graph_cycle(tube: SymmetricTube, c: EdgeCycle):
    """Tube cycle projecting onto a simple graph cycle: X sweeps joined by
    two-step W transits at each vertex."""
    if len(c.steps) < 3:
        raise GraphError("simple graphs have no cycles shorter than 3 edges")
    if len({eid for eid, _ in c.steps}) != len(c.steps):
        raise GraphError("cycle must be simple (no repeated edges)")
    g = tube.graph
    out = []
    n = len(c.steps)
    for idx, (eid, d) in enumerate(c.steps):
        out.append((tube.x_edge(eid), d))
        nxt_eid, _ = c.steps[(idx + 1) % n]
        e = g.edge(eid)
        v = e.head if d > 0 else e.tail        # meeting vertex
        # Z(v, eid) -> W(v, {eid, nxt}) -> Z(v, nxt)
        y1 = tube.y_edge(v, eid, nxt_eid)      # moving point leaves v on nxt
        out.append((y1, +1 if y1.u.kind == "Z" else -1))
        y2 = tube.y_edge(v, nxt_eid, eid)      # moving point returns to v
        out.append((y2, +1 if y2.u.kind == "W" else -1))
    return out


def cycle_is_closed(steps) -> bool:
    cur = None
    first = None
    for e, d in steps:
        a, b = (e.u, e.v) if d > 0 else (e.v, e.u)
        if first is None:
            first = a
        elif a != cur:
            return False
        cur = b
    return cur == first


def swap_parity(steps) -> int:
    """0 if the closed pair path returns with the two points in the same
    roles, 1 if they come back swapped.

    Each cell orders its pair by a local convention (Z: vertex then
    near-point; W: lower then higher edge id; X: tail-side then head-side;
    Y: fixed then moving).  Crossing an X cell always exchanges which
    physical point sits in the first slot of the bounding Z cells; crossing
    Y(v, a, b) exchanges it exactly when a < b.  The parity of these
    exchanges around a closed path is the swap parity, independent of
    traversal direction.
    """
    flips = 0
    for e, _ in steps:
        if e.kind == "X" or e.edge_a < e.edge_b:
            flips += 1
    return flips % 2


def to_dot(tc: TubeComplex) -> str:
    lines = ["graph tube {", "  node [fontsize=10];"]
    for c in tc.tube.vertices:
        color = "lightblue" if c.kind == "Z" else "lightsalmon"
        lines.append(f'  "{c.label()}" [style=filled, fillcolor={color}];')
    for e in tc.tube.edges:
        style = "solid" if e in tc.tree_edges else "dashed"
        color = "black" if e.kind == "X" else "gray40"
        lines.append(
            f'  "{e.u.label()}" -- "{e.v.label()}" '
            f'[style={style}, color={color}, label="{e.label()}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json_dict(tc: TubeComplex) -> dict:
    basis = wu_basis(tc)
    return {
        "graph": tc.tube.graph.to_json_dict(),
        "cells": {
            "vertices": [c.label() for c in tc.tube.vertices],
            "edges": [e.label() for e in tc.tube.edges],
        },
        "tree": [e.label() for e in tc.tube.edges if e in tc.tree_edges],
        "basis": basis.names(),
        "rank": rank(tc.tube.graph),
    }
