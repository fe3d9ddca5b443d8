import itertools
import random

import pytest

from planetube.geometry import Polyline
from planetube.graphs import (Graph, GraphError, validate_graph,
                              complete_graph)
from planetube.immersion import (PlaneImmersion, ImmersionError,
                                 validate_generic)


def resample_midpoints(f: PlaneImmersion) -> PlaneImmersion:
    """Insert the midpoint of every polyline segment (a no-op reparam)."""
    polylines = {}
    for e in f.graph.edges:
        pts = f.polylines[e.id].points
        out = [pts[0]]
        for a, b in zip(pts, pts[1:]):
            out.append(((a[0] + b[0]) / 2, (a[1] + b[1]) / 2))
            out.append(b)
        polylines[e.id] = Polyline(out)
    return PlaneImmersion(f.graph, dict(f.positions), polylines)


def straight_line_immersion(g: Graph, positions) -> PlaneImmersion:
    polylines = {e.id: Polyline([positions[e.tail], positions[e.head]])
                 for e in g.edges}
    return PlaneImmersion(g, dict(positions), polylines)


def random_k4(seed: int) -> PlaneImmersion:
    """Straight-line K4 on random points, retried until generic."""
    rng = random.Random(seed)
    g = complete_graph(4)
    while True:
        positions = {v: (rng.uniform(0.0, 10.0), rng.uniform(0.0, 10.0))
                     for v in g.vertices()}
        try:
            f = straight_line_immersion(g, positions)
        except ImmersionError:
            continue
        if validate_generic(f).passed:
            return f


def connected_graphs_upto(max_vertices: int):
    """All connected simple labeled graphs with 2..max_vertices vertices."""
    for m in range(2, max_vertices + 1):
        pairs = list(itertools.combinations(range(1, m + 1), 2))
        for bits in range(1, 1 << len(pairs)):
            chosen = [pairs[i] for i in range(len(pairs)) if bits >> i & 1]
            try:
                yield validate_graph(m, chosen)
            except GraphError:
                continue


def random_connected_graph(rng: random.Random, max_vertices: int) -> Graph:
    while True:
        m = rng.randint(2, max_vertices)
        pairs = list(itertools.combinations(range(1, m + 1), 2))
        k = rng.randint(min(m - 1, len(pairs)), len(pairs))
        try:
            return validate_graph(m, rng.sample(pairs, k))
        except GraphError:
            continue


@pytest.fixture
def k4():
    from planetube.immersion import planar_k4
    return planar_k4()
