"""Polyline plane immersions of graphs: genericity, crossings, cyclic
orders, turning numbers, fixtures.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import geometry as geo
from .geometry import Polyline, Point
from .graphs import (Graph, EdgeCycle, GraphError, SubgraphMap,
                     complete_graph, star_graph)


class ImmersionError(ValueError):
    pass


class NotGenericError(ImmersionError):
    pass


@dataclass
class Tolerances:
    """Numeric policy for genericity predicates.

    tau_rel scales with the drawing (tau = tau_rel * bbox diagonal);
    angle_tol is an absolute angular tolerance in radians.
    """
    tau_rel: float = 1e-6
    angle_tol: float = 1e-6
    tau_abs: float | None = None    # overrides tau_rel when set

    def tau_for(self, diag: float) -> float:
        if self.tau_abs is not None:
            return self.tau_abs
        return self.tau_rel * max(diag, 1e-300)


@dataclass(frozen=True)
class PlaneImmersion:
    graph: Graph
    positions: dict = field(compare=False)          # vertex id -> Point
    polylines: dict = field(compare=False)          # edge id -> Polyline

    def __post_init__(self):
        for v in self.graph.vertices():
            if v not in self.positions:
                raise ImmersionError(f"missing position for vertex {v}")
        for e in self.graph.edges:
            pl = self.polylines.get(e.id)
            if pl is None:
                raise ImmersionError(f"missing polyline for edge {e.id}")
            if pl.points[0] != tuple(self.positions[e.tail]):
                raise ImmersionError(
                    f"edge {e.id}: polyline does not start at tail position")
            if pl.points[-1] != tuple(self.positions[e.head]):
                raise ImmersionError(
                    f"edge {e.id}: polyline does not end at head position")

    def bbox_diagonal(self) -> float:
        xs = [p[0] for pl in self.polylines.values() for p in pl.points]
        ys = [p[1] for pl in self.polylines.values() for p in pl.points]
        return math.hypot(max(xs) - min(xs), max(ys) - min(ys))

    def germ_direction(self, v: int, eid: int) -> Point:
        """Unit direction of the first polyline segment leaving v along
        edge eid."""
        e = self.graph.edge(eid)
        pl = self.polylines[eid]
        if v == e.tail:
            a, b = pl.points[0], pl.points[1]
        elif v == e.head:
            a, b = pl.points[-1], pl.points[-2]
        else:
            raise ImmersionError(f"edge {eid} is not incident to vertex {v}")
        return geo.unit(geo.sub(b, a))

    def point_from(self, eid: int, v: int, s: float) -> Point:
        """Point at arclength s along edge eid measured from endpoint v."""
        e = self.graph.edge(eid)
        pl = self.polylines[eid]
        if v == e.tail:
            return pl.point_at(s)
        if v == e.head:
            return pl.point_at(pl.length - s)
        raise ImmersionError(f"edge {eid} is not incident to vertex {v}")

    def to_json_dict(self) -> dict:
        return {
            "graph": self.graph.to_json_dict(),
            "positions": {str(v): list(self.positions[v])
                          for v in self.graph.vertices()},
            "polylines": {str(e.id): [list(p)
                                      for p in self.polylines[e.id].points]
                          for e in self.graph.edges},
        }


def immersion_from_json_dict(data: dict) -> PlaneImmersion:
    from .graphs import validate_graph
    gd = data["graph"]
    g = validate_graph(gd["vertices"], gd["edges"])
    positions = {int(k): tuple(map(float, v))
                 for k, v in data["positions"].items()}
    polylines = {int(k): Polyline(v) for k, v in data["polylines"].items()}
    return PlaneImmersion(g, positions, polylines)


@dataclass(frozen=True)
class StrandPoint:
    edge: int
    segment: int
    t: float            # parameter within the segment, in (0, 1)
    arclength: float    # along the edge from its tail


@dataclass(frozen=True)
class Crossing:
    point: Point
    first: StrandPoint        # ordered by (edge, segment, t)
    second: StrandPoint
    sign: int                 # orientation of (first dir, second dir)


@dataclass(frozen=True)
class CyclicOrder:
    vertex: int
    edges: tuple[int, ...]    # counterclockwise, rotated so smallest id first

    @staticmethod
    def from_sequence(vertex: int, seq) -> "CyclicOrder":
        seq = list(seq)
        k = seq.index(min(seq))
        return CyclicOrder(vertex, tuple(seq[k:] + seq[:k]))

    def mirrored(self) -> "CyclicOrder":
        rev = list(reversed(self.edges))
        return CyclicOrder.from_sequence(self.vertex, rev)


@dataclass
class GenericityReport:
    passed: bool
    violations: list
    crossings: list
    cyclic_orders: dict        # vertex -> CyclicOrder
    epsilon: float
    tau: float


def _all_segments(f: PlaneImmersion):
    out = []
    for e in f.graph.edges:
        pl = f.polylines[e.id]
        for i, (a, b) in enumerate(pl.segments()):
            out.append((e.id, i, a, b))
    return out


def _segments_share_point(f, e1, i1, a1, b1, e2, i2, a2, b2) -> bool:
    if e1 == e2:
        return abs(i1 - i2) <= 1
    return bool({a1, b1} & {a2, b2})


def find_crossings(f: PlaneImmersion, tau: float, angle_tol: float):
    """Proper transversal crossings plus degeneracy violations."""
    segs = _all_segments(f)
    crossings = []
    violations = []
    for i in range(len(segs)):
        e1, i1, a1, b1 = segs[i]
        pl1 = f.polylines[e1]
        for j in range(i + 1, len(segs)):
            e2, i2, a2, b2 = segs[j]
            if _segments_share_point(f, e1, i1, a1, b1, e2, i2, a2, b2):
                continue
            hit = geo.segment_intersection(a1, b1, a2, b2)
            if hit is None:
                # flag tangential / endpoint contact of unrelated strands
                d = min(geo.point_segment_distance(a1, a2, b2),
                        geo.point_segment_distance(b1, a2, b2),
                        geo.point_segment_distance(a2, a1, b1),
                        geo.point_segment_distance(b2, a1, b1))
                if d < tau:
                    violations.append(
                        ("near-contact", f"edges {e1}/{e2} touch without "
                         f"transversal crossing near {a1}"))
                continue
            pt, t1, t2 = hit
            d1 = geo.unit(geo.sub(b1, a1))
            d2 = geo.unit(geo.sub(b2, a2))
            if abs(geo.cross(d1, d2)) < angle_tol:
                violations.append(
                    ("non-transversal", f"edges {e1}/{e2} cross at {pt} "
                     "with near-parallel strands"))
                continue
            pl2 = f.polylines[e2]
            s1 = pl1.cum[i1] + t1 * (pl1.cum[i1 + 1] - pl1.cum[i1])
            s2 = pl2.cum[i2] + t2 * (pl2.cum[i2 + 1] - pl2.cum[i2])
            sp1 = StrandPoint(e1, i1, t1, s1)
            sp2 = StrandPoint(e2, i2, t2, s2)
            sign = 1 if geo.cross(d1, d2) > 0 else -1
            crossings.append(Crossing(pt, sp1, sp2, sign))
    return crossings, violations


def cyclic_order(f: PlaneImmersion, v: int,
                 tol: Tolerances | None = None) -> CyclicOrder:
    tol = tol or Tolerances()
    eids = f.graph.incident_edges(v)
    angles = [(geo.angle_of(f.germ_direction(v, e)), e) for e in eids]
    angles.sort()
    for (a1, e1), (a2, e2) in zip(angles, angles[1:] + [(angles[0][0] + 2 * math.pi,
                                                         angles[0][1])]):
        if abs(a2 - a1) < tol.angle_tol:
            raise NotGenericError(
                f"coincident germ angles at vertex {v}: edges {e1}, {e2}")
    return CyclicOrder.from_sequence(v, [e for _, e in angles])


def validate_generic(f: PlaneImmersion,
                     tol: Tolerances | None = None) -> GenericityReport:
    tol = tol or Tolerances()
    diag = f.bbox_diagonal()
    tau = tol.tau_for(diag)
    violations = []

    # (a) local injectivity of each polyline
    for e in f.graph.edges:
        pl = f.polylines[e.id]
        for i, (a, b) in enumerate(pl.segments()):
            if geo.dist(a, b) <= tau:
                violations.append(
                    ("degenerate-segment", f"edge {e.id} segment {i} at {a}"))
        for i in range(1, len(pl.points) - 1):
            u_in = geo.sub(pl.points[i], pl.points[i - 1])
            u_out = geo.sub(pl.points[i + 1], pl.points[i])
            if geo.norm(u_in) == 0 or geo.norm(u_out) == 0:
                continue
            turn = geo.turn_angle(geo.unit(u_in), geo.unit(u_out))
            if abs(turn) >= math.pi - tol.angle_tol:
                violations.append(
                    ("not-an-immersion",
                     f"edge {e.id} doubles back at bend {pl.points[i]}"))

    # (e) distinct germ angles
    orders = {}
    for v in f.graph.vertices():
        try:
            orders[v] = cyclic_order(f, v, tol)
        except NotGenericError as exc:
            violations.append(("germ-collision", str(exc)))

    # (b) crossings transversal, interior
    crossings, cviol = find_crossings(f, tau, tol.angle_tol)
    violations.extend(cviol)

    # (c) crossings clear of vertices and bends
    features = [tuple(f.positions[v]) for v in f.graph.vertices()]
    bends = [p for e in f.graph.edges
             for p in f.polylines[e.id].points[1:-1]]
    for c in crossings:
        for p in features:
            if geo.dist(c.point, p) < tau:
                violations.append(
                    ("crossing-at-vertex", f"crossing {c.point} near vertex {p}"))
        for p in bends:
            if geo.dist(c.point, p) < tau:
                violations.append(
                    ("crossing-at-bend", f"crossing {c.point} near bend {p}"))

    # (d) no triple points
    for i in range(len(crossings)):
        for j in range(i + 1, len(crossings)):
            if geo.dist(crossings[i].point, crossings[j].point) < tau:
                violations.append(
                    ("triple-point",
                     f"crossings coincide near {crossings[i].point}"))

    eps = 0.0
    if not violations:
        eps = 0.5 * _min_clearance(f, crossings)
        if eps <= tau:
            violations.append(("no-scale", "feature clearances below tolerance"))
            eps = 0.0
        else:
            # pair samples near a vertex sit at scale eps along two germs;
            # their separation 2 eps sin(theta/2) must clear tau with room
            # for downscaling eps
            theta = _min_germ_angle(f)
            if 2.0 * eps * math.sin(theta / 2.0) <= 8.0 * tau:
                violations.append(
                    ("no-scale", "germ angles too shallow for the drawing "
                     "tolerance"))
                eps = 0.0

    return GenericityReport(
        passed=not violations,
        violations=violations,
        crossings=crossings,
        cyclic_orders=orders,
        epsilon=eps,
        tau=tau,
    )


def _min_germ_angle(f: PlaneImmersion) -> float:
    """Smallest angle between two edge germs at a common vertex."""
    best = math.pi
    for v in f.graph.vertices():
        eids = f.graph.incident_edges(v)
        dirs = [f.germ_direction(v, e) for e in eids]
        for i in range(len(dirs)):
            for j in range(i + 1, len(dirs)):
                ang = abs(geo.turn_angle(dirs[i], dirs[j]))
                best = min(best, ang)
    return best


def _min_clearance(f: PlaneImmersion, crossings) -> float:
    """Scale at which every vertex disk meets the image only in embedded
    germs and every pair sample stays unambiguous."""
    best = math.inf
    segs = _all_segments(f)
    for v in f.graph.vertices():
        pos = tuple(f.positions[v])
        inc = set(f.graph.incident_edges(v))
        for eid, i, a, b in segs:
            e = f.graph.edge(eid)
            n_seg = len(f.polylines[eid].points) - 1
            if eid in inc:
                germ_at_v = (i == 0 and e.tail == v) or \
                            (i == n_seg - 1 and e.head == v)
                if germ_at_v:
                    continue
            best = min(best, geo.point_segment_distance(pos, a, b))
    for c in crossings:
        for v in f.graph.vertices():
            best = min(best, geo.dist(c.point, tuple(f.positions[v])))
    for i in range(len(crossings)):
        for j in range(i + 1, len(crossings)):
            best = min(best, geo.dist(crossings[i].point, crossings[j].point))
        c = crossings[i]
        if c.first.edge == c.second.edge:
            best = min(best, abs(c.first.arclength - c.second.arclength) / 2.0)
    for e in f.graph.edges:
        pl = f.polylines[e.id]
        best = min(best,
                   geo.dist(pl.points[0], pl.points[1]),
                   geo.dist(pl.points[-2], pl.points[-1]),
                   pl.length / 2.0)
    return best


def trace_cycle(f: PlaneImmersion, c: EdgeCycle) -> list[Point]:
    """Closed point sequence of f restricted to a simple cycle, traversed in
    the cycle's direction.  Last point equals the first."""
    pts: list[Point] = []
    for eid, d in c.steps:
        seq = f.polylines[eid].points
        if d < 0:
            seq = list(reversed(seq))
        if pts:
            pts.extend(seq[1:])
        else:
            pts.extend(seq)
    return pts


def turning_number(points: list[Point], angle_tol: float = 1e-6) -> int:
    """Total signed turning of a closed polyline, in full turns.

    The input is cyclic: the last point must equal the first.  Corner turns
    of +-pi are rejected.
    """
    if len(points) < 4 or points[0] != points[-1]:
        raise ImmersionError("turning number needs a closed polyline")
    dirs = []
    for a, b in zip(points, points[1:]):
        if geo.dist(a, b) == 0:
            raise ImmersionError("zero-length step in closed polyline")
        dirs.append(geo.unit(geo.sub(b, a)))
    total = 0.0
    for u_in, u_out in zip(dirs, dirs[1:] + dirs[:1]):
        turn = geo.turn_angle(u_in, u_out)
        if abs(turn) >= math.pi - angle_tol:
            raise ImmersionError("straight-back corner in closed polyline")
        total += turn
    k = total / (2.0 * math.pi)
    if abs(k - round(k)) > 1e-9:
        raise ImmersionError(f"turning total {total} is not a full-turn multiple")
    return int(round(k))


def restrict(f: PlaneImmersion, sub: SubgraphMap) -> PlaneImmersion:
    """Copy positions and polylines onto a relabeled subgraph."""
    positions = {v: tuple(f.positions[sub.vertex_to_parent[v]])
                 for v in sub.graph.vertices()}
    polylines = {}
    for e in sub.graph.edges:
        parent_eid = sub.edge_to_parent[e.id]
        parent_edge = f.graph.edge(parent_eid)
        pl = f.polylines[parent_eid]
        if sub.vertex_to_parent[e.tail] == parent_edge.tail:
            polylines[e.id] = Polyline(pl.points)
        else:
            polylines[e.id] = pl.reversed()
    return PlaneImmersion(sub.graph, positions, polylines)


def map_points(f: PlaneImmersion, fn) -> PlaneImmersion:
    """Apply a point transformation to every coordinate."""
    positions = {v: fn(tuple(f.positions[v])) for v in f.graph.vertices()}
    polylines = {e.id: Polyline([fn(p) for p in f.polylines[e.id].points])
                 for e in f.graph.edges}
    return PlaneImmersion(f.graph, positions, polylines)


def reflect(f: PlaneImmersion) -> PlaneImmersion:
    return map_points(f, lambda p: (p[0], -p[1]))


# ---------------------------------------------------------------------------
# fixtures


def standard_curve(r: int) -> PlaneImmersion:
    """A plane curve (K3 immersion) whose invariant coordinate is r.

    The canonical evaluation cycle traverses v2 -> v3 -> v1 -> v2; the base
    triangle makes that loop counterclockwise, and |r - 1| curls on edge e3
    adjust the turning.
    """
    g = complete_graph(3)
    v1, v2, v3 = (2.0, 3.0), (0.0, 0.0), (4.0, 0.0)
    positions = {1: v1, 2: v2, 3: v3}
    e3_points: list[Point] = [v2]
    kinks = abs(r - 1)
    sign = 1 if r > 1 else -1
    radius = 0.1
    for k in range(kinks):
        center = (0.6 + 0.9 * k, 0.0)
        e3_points.extend(geo.kink_waypoints(center, (1.0, 0.0), radius, sign))
    e3_points.append(v3)
    polylines = {
        1: Polyline([v1, v2]),          # e1 = (1,2)
        2: Polyline([v1, v3]),          # e2 = (1,3)
        3: Polyline(e3_points),         # e3 = (2,3)
    }
    return PlaneImmersion(g, positions, polylines)


def standard_star(order, germ_angles=None, spoke: float = 1.0) -> PlaneImmersion:
    """Straight-spoke star immersion realizing a cyclic order of edge germs.

    `order` lists edge ids counterclockwise; evenly spaced germs unless
    explicit angles (per edge id) are given.
    """
    order = list(order)
    d = len(order)
    if sorted(order) != list(range(1, d + 1)):
        raise ImmersionError("order must be a permutation of 1..d")
    g = star_graph(d)
    if germ_angles is None:
        germ_angles = {eid: math.pi / 2 + 2 * math.pi * k / d
                       for k, eid in enumerate(order)}
    center = (0.0, 0.0)
    positions = {d + 1: center}
    polylines = {}
    for eid in range(1, d + 1):
        a = germ_angles[eid]
        tip = (spoke * math.cos(a), spoke * math.sin(a))
        positions[eid] = tip
        polylines[eid] = Polyline([tip, center])   # e = (leaf, center)
    return PlaneImmersion(g, positions, polylines)


def planar_k4() -> PlaneImmersion:
    """Embedded K4: outer triangle v1 v2 v3 with v4 inside."""
    g = complete_graph(4)
    positions = {1: (0.0, 0.0), 2: (6.0, 0.0), 3: (3.0, 5.0), 4: (3.1, 1.7)}
    polylines = {e.id: Polyline([positions[e.tail], positions[e.head]])
                 for e in g.edges}
    return PlaneImmersion(g, positions, polylines)


# ---------------------------------------------------------------------------
# rendering


def to_svg(f: PlaneImmersion, report: GenericityReport | None = None,
           size: int = 480) -> str:
    xs = [p[0] for pl in f.polylines.values() for p in pl.points]
    ys = [p[1] for pl in f.polylines.values() for p in pl.points]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0, 1e-9)
    pad = 0.05 * span

    def sx(p):
        return (p[0] - x0 + pad) / (span + 2 * pad) * size

    def sy(p):
        return size - (p[1] - y0 + pad) / (span + 2 * pad) * size

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" '
             f'height="{size}" viewBox="0 0 {size} {size}">']
    for e in f.graph.edges:
        pts = " ".join(f"{sx(p):.2f},{sy(p):.2f}" for p in f.polylines[e.id].points)
        parts.append(f'<polyline points="{pts}" fill="none" stroke="black" '
                     'stroke-width="1.5"/>')
        mid = f.polylines[e.id].point_at(f.polylines[e.id].length / 2)
        parts.append(f'<text x="{sx(mid):.2f}" y="{sy(mid)-4:.2f}" '
                     f'font-size="11" fill="blue">e{e.id}</text>')
    for v in f.graph.vertices():
        p = tuple(f.positions[v])
        parts.append(f'<circle cx="{sx(p):.2f}" cy="{sy(p):.2f}" r="3.5" '
                     'fill="black"/>')
        parts.append(f'<text x="{sx(p)+5:.2f}" y="{sy(p)-5:.2f}" '
                     f'font-size="12">v{v}</text>')
    if report is not None:
        for c in report.crossings:
            parts.append(f'<circle cx="{sx(c.point):.2f}" cy="{sy(c.point):.2f}" '
                         'r="3" fill="none" stroke="red" stroke-width="1.5"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
