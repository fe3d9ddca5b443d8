"""Finite simple connected labeled graphs with deterministic orderings.

Vertices are 1..m, edges 1..n; every edge is stored oriented tail -> head
with tail < head.  All invariant signs downstream depend on these
conventions, so construction is strict and deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from collections import deque


class GraphError(ValueError):
    """Raised for structurally invalid graph data."""


@dataclass(frozen=True)
class Edge:
    id: int
    tail: int
    head: int

    def other(self, v: int) -> int:
        if v == self.tail:
            return self.head
        if v == self.head:
            return self.tail
        raise GraphError(f"vertex {v} is not an endpoint of edge {self.id}")

    def ends(self) -> frozenset:
        return frozenset((self.tail, self.head))


@dataclass(frozen=True)
class Graph:
    num_vertices: int
    edges: tuple[Edge, ...]
    _incident: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        inc: dict[int, list[int]] = {v: [] for v in self.vertices()}
        for e in self.edges:
            inc[e.tail].append(e.id)
            inc[e.head].append(e.id)
        for v in inc:
            inc[v].sort()
        object.__setattr__(self, "_incident", inc)

    def vertices(self) -> range:
        return range(1, self.num_vertices + 1)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def edge(self, eid: int) -> Edge:
        return self.edges[eid - 1]

    def incident_edges(self, v: int) -> list[int]:
        """Edge ids at v, in increasing id order."""
        try:
            return list(self._incident[v])
        except KeyError:
            raise GraphError(f"unknown vertex {v}")

    def degree(self, v: int) -> int:
        return len(self.incident_edges(v))

    def neighbors_in_edge_order(self, v: int) -> list[int]:
        """Neighbors of v ordered by increasing incident edge id."""
        return [self.edge(i).other(v) for i in self.incident_edges(v)]

    def betti(self) -> int:
        return self.num_edges - self.num_vertices + 1

    def to_json_dict(self) -> dict:
        return {
            "vertices": self.num_vertices,
            "edges": [[e.tail, e.head] for e in self.edges],
        }


@dataclass(frozen=True)
class SpanningTree:
    graph: Graph
    edge_ids: frozenset
    root: int
    parent: dict = field(compare=False, repr=False)

    @property
    def non_tree_edges(self) -> list[int]:
        return [e.id for e in self.graph.edges if e.id not in self.edge_ids]

    def path(self, u: int, v: int) -> list[tuple[int, int]]:
        """Tree path from u to v as (edge id, direction) pairs.

        Direction is +1 when the edge is traversed tail -> head.
        """
        up_u, up_v = self._root_chain(u), self._root_chain(v)
        su, sv = {x for x, _ in up_u}, {x for x, _ in up_v}
        # lowest common ancestor: first vertex of u's chain lying on v's chain
        lca = next(x for x, _ in up_u if x in sv)
        part1 = []
        for x, eid in up_u:
            if x == lca:
                break
            e = self.graph.edge(eid)
            part1.append((eid, +1 if e.tail == x else -1))
        part2 = []
        for x, eid in up_v:
            if x == lca:
                break
            e = self.graph.edge(eid)
            part2.append((eid, +1 if e.head == x else -1))
        return part1 + list(reversed(part2))

    def _root_chain(self, v: int) -> list[tuple[int, int]]:
        """(vertex, edge-to-parent) pairs from v to the root, root last."""
        chain = []
        while v != self.root:
            eid = self.parent[v]
            chain.append((v, eid))
            v = self.graph.edge(eid).other(v)
        chain.append((v, 0))
        return chain


@dataclass(frozen=True)
class EdgeCycle:
    """Closed edge sequence: (edge id, +1/-1) pairs, consecutive edges share
    the matching endpoint."""
    graph: Graph
    steps: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not self.steps:
            raise GraphError("empty cycle")
        v = self.start_vertex()
        for eid, d in self.steps:
            e = self.graph.edge(eid)
            expected = e.tail if d > 0 else e.head
            if v != expected:
                raise GraphError("cycle steps do not chain")
            v = e.head if d > 0 else e.tail
        if v != self.start_vertex():
            raise GraphError("cycle is not closed")

    def start_vertex(self) -> int:
        eid, d = self.steps[0]
        e = self.graph.edge(eid)
        return e.tail if d > 0 else e.head

    def vertices(self) -> list[int]:
        """Vertex at the start of each step."""
        out = []
        v = self.start_vertex()
        for eid, d in self.steps:
            out.append(v)
            v = self.graph.edge(eid).other(v)
        return out


def validate_graph(num_vertices: int, edge_pairs) -> Graph:
    """Build a canonical Graph or raise GraphError listing all violations."""
    problems = []
    if num_vertices < 1:
        problems.append("graph needs at least one vertex")
    pairs = [tuple(p) for p in edge_pairs]
    if not pairs:
        problems.append("graph needs at least one edge")
    seen = set()
    edges = []
    for idx, (a, b) in enumerate(pairs, start=1):
        if not (1 <= a <= num_vertices and 1 <= b <= num_vertices):
            problems.append(f"edge {idx}: endpoint outside 1..{num_vertices}")
            continue
        if a == b:
            problems.append(f"edge {idx}: loop at vertex {a}")
            continue
        key = frozenset((a, b))
        if key in seen:
            problems.append(f"edge {idx}: duplicate of edge ({min(a,b)},{max(a,b)})")
            continue
        seen.add(key)
        edges.append(Edge(idx, min(a, b), max(a, b)))
    if not problems:
        g = Graph(num_vertices, tuple(edges))
        reached = _bfs_order(g, 1)
        if len(reached) != num_vertices:
            missing = sorted(set(g.vertices()) - set(reached))
            problems.append(f"disconnected: vertices {missing} unreachable from v1")
        else:
            return g
    raise GraphError("; ".join(problems))


def _bfs_order(g: Graph, root: int) -> list[int]:
    seen = {root}
    order = [root]
    q = deque([root])
    while q:
        v = q.popleft()
        for eid in g.incident_edges(v):
            w = g.edge(eid).other(v)
            if w not in seen:
                seen.add(w)
                order.append(w)
                q.append(w)
    return order


def complete_graph(m: int) -> Graph:
    if m < 2:
        raise GraphError("complete graph needs m >= 2")
    pairs = [(i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1)]
    return validate_graph(m, pairs)


def star_graph(n: int) -> Graph:
    """S_n: center v_{n+1}, edges e_i = (v_i, v_{n+1})."""
    if n < 1:
        raise GraphError("star graph needs n >= 1")
    return validate_graph(n + 1, [(i, n + 1) for i in range(1, n + 1)])


def cycle_graph(k: int) -> Graph:
    if k < 3:
        raise GraphError("cycle graph needs k >= 3")
    pairs = [(i, i + 1) for i in range(1, k)] + [(1, k)]
    return validate_graph(k, pairs)


def path_graph(k: int) -> Graph:
    if k < 2:
        raise GraphError("path graph needs k >= 2")
    return validate_graph(k, [(i, i + 1) for i in range(1, k)])


def canonical_spanning_tree(g: Graph) -> SpanningTree:
    """Breadth-first tree from v1, neighbors explored in edge-id order."""
    parent: dict[int, int] = {}
    tree_edges = set()
    seen = {1}
    q = deque([1])
    while q:
        v = q.popleft()
        for eid in g.incident_edges(v):
            w = g.edge(eid).other(v)
            if w not in seen:
                seen.add(w)
                parent[w] = eid
                tree_edges.add(eid)
                q.append(w)
    return SpanningTree(g, frozenset(tree_edges), 1, parent)


def fundamental_cycle(t: SpanningTree, eid: int) -> EdgeCycle:
    """The non-tree edge traversed positively, then the tree path
    head -> tail."""
    if eid in t.edge_ids:
        raise GraphError(f"edge {eid} is a tree edge")
    e = t.graph.edge(eid)
    steps = [(eid, +1)] + t.path(e.head, e.tail)
    return EdgeCycle(t.graph, tuple(steps))


@dataclass(frozen=True)
class SubgraphMap:
    """A subgraph relabeled canonically, with maps back to the parent."""
    graph: Graph
    vertex_to_parent: dict = field(compare=False)
    edge_to_parent: dict = field(compare=False)


def star(g: Graph, v: int) -> SubgraphMap:
    """st(v) relabeled as the standard star: neighbors (by incident edge id)
    become v_1..v_d, the center becomes v_{d+1}."""
    if v not in g.vertices():
        raise GraphError(f"unknown vertex {v}")
    eids = g.incident_edges(v)
    d = len(eids)
    neighbors = [g.edge(i).other(v) for i in eids]
    sub = star_graph(d)
    vmap = {i + 1: w for i, w in enumerate(neighbors)}
    vmap[d + 1] = v
    emap = {i + 1: eid for i, eid in enumerate(eids)}
    return SubgraphMap(sub, vmap, emap)


def subgraph_from_edges(g: Graph, edge_ids) -> SubgraphMap:
    """Connected subgraph spanned by the given edges, relabeled canonically.

    Vertices keep their parent relative order; edges keep their parent
    relative order.
    """
    eids = sorted(set(edge_ids))
    if not eids:
        raise GraphError("subgraph needs at least one edge")
    verts = sorted({w for i in eids for w in (g.edge(i).tail, g.edge(i).head)})
    vindex = {w: k + 1 for k, w in enumerate(verts)}
    pairs = [(vindex[g.edge(i).tail], vindex[g.edge(i).head]) for i in eids]
    sub = validate_graph(len(verts), pairs)
    vmap = {k + 1: w for k, w in enumerate(verts)}
    emap = {k + 1: i for k, i in enumerate(eids)}
    return SubgraphMap(sub, vmap, emap)
