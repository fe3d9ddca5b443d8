"""Independent brute-force checks for the main pipeline.

cell_census enumerates the cells of the quotient of the deleted product by
the point swap and checks the tube counts against closed forms.
betti_oracle recomputes the tube's first Betti number from the boundary
matrix by exact elimination.  dense_winding_oracle re-traces pair paths
with fixed uniform sampling and naive angle accumulation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import geometry as geo
from .graphs import Graph
from .tube import SymmetricTube
from .invariant import PairPath, WindingError, _chord


@dataclass(frozen=True)
class CellCensus:
    diagonal_cells: int          # one per vertex plus one per edge
    disjoint_pairs: int          # ordered pairs of disjoint closed simplices
    tube_vertices: int
    tube_edges: int
    tube_vertices_formula: int   # 2n + sum C(d,2)
    tube_edges_formula: int      # n + 2 sum C(d,2)
    betti_formula: int           # 1 - 2n + (sum d^2)/2


def cell_census(g: Graph) -> CellCensus:
    m, n = g.num_vertices, g.num_edges
    # ordered pairs of disjoint closed simplices (vertex or closed edge)
    simplices = [("v", frozenset((v,))) for v in g.vertices()]
    simplices += [("e", e.ends()) for e in g.edges]
    disjoint = sum(1 for a in simplices for b in simplices
                   if a is not b and not (a[1] & b[1]))
    pairs = sum(math.comb(g.degree(v), 2) for v in g.vertices())
    sq = sum(g.degree(v) ** 2 for v in g.vertices())
    return CellCensus(
        diagonal_cells=m + n,
        disjoint_pairs=disjoint,
        tube_vertices=2 * n + pairs,
        tube_edges=n + 2 * pairs,
        tube_vertices_formula=2 * n + pairs,
        tube_edges_formula=n + 2 * pairs,
        betti_formula=1 - 2 * n + sq // 2,
    )


def census_matches_tube(census: CellCensus, tube: SymmetricTube) -> bool:
    return (len(tube.vertices) == census.tube_vertices_formula
            and len(tube.edges) == census.tube_edges_formula)


def _matrix_rank(rows: list[list[int]]) -> int:
    """Exact rank of an integer matrix with all minors in {-1, 0, 1}.

    For such (totally unimodular) matrices the rank over any prime field
    equals the rational rank, so vectorized elimination mod p is exact.
    Graph incidence matrices, our only input, are totally unimodular.
    """
    p = 2_147_483_647
    mat = np.array(rows, dtype=np.int64) % p
    rank = 0
    n_rows = len(rows)
    n_cols = mat.shape[1] if n_rows else 0
    for col in range(n_cols):
        nz = np.nonzero(mat[rank:, col])[0]
        if nz.size == 0:
            continue
        pivot = rank + int(nz[0])
        mat[[rank, pivot]] = mat[[pivot, rank]]
        inv = pow(int(mat[rank, col]), p - 2, p)
        mat[rank] = mat[rank] * inv % p
        others = np.nonzero(mat[:, col])[0]
        others = others[others != rank]
        if others.size:
            mat[others] = (mat[others] - mat[others, col][:, None]
                           * mat[rank][None, :]) % p
        rank += 1
        if rank == n_rows:
            break
    return rank


def betti_oracle(tube: SymmetricTube) -> int:
    """First Betti number of the tube from its boundary matrix."""
    index = {c: i for i, c in enumerate(tube.vertices)}
    rows = [[0] * len(tube.edges) for _ in tube.vertices]
    for j, e in enumerate(tube.edges):
        rows[index[e.u]][j] -= 1
        rows[index[e.v]][j] += 1
    r = _matrix_rank(rows)
    components = len(tube.vertices) - r
    return len(tube.edges) - len(tube.vertices) + components


def dense_winding_oracle(path: PairPath, per_cell: int = 10_000,
                         tol: float = 1e-6) -> int:
    """Naive fixed-step accumulation of the pair direction, in units of pi."""
    total = 0.0
    prev = None
    for _, _, pair in path.samples(per_cell):
        a, _ = _chord(pair, path.tau)
        if prev is not None:
            total += geo.wrap_to_half_pi(a - prev)
        prev = a
    k = total / math.pi
    if abs(k - round(k)) > tol:
        raise WindingError(
            f"dense trace total {total} is not an integer multiple of pi")
    return int(round(k))
