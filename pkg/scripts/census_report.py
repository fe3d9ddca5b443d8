#!/usr/bin/env python3
"""Cell census and Betti cross-check over small graphs, as a JSON report."""
import argparse
import itertools
import json
import sys

from planetube.graphs import validate_graph, GraphError
from planetube.tube import build_symmetric_tube, rank
from planetube.oracles import betti_oracle, cell_census


def connected_graphs(max_vertices):
    for m in range(2, max_vertices + 1):
        pairs = list(itertools.combinations(range(1, m + 1), 2))
        for bits in range(1, 1 << len(pairs)):
            chosen = [pairs[i] for i in range(len(pairs)) if bits >> i & 1]
            try:
                yield validate_graph(m, chosen)
            except GraphError:
                continue


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-vertices", type=int, default=5)
    args = ap.parse_args()

    rows = []
    mismatches = 0
    for g in connected_graphs(args.max_vertices):
        tube = build_symmetric_tube(g)
        census = cell_census(g)
        betti = betti_oracle(tube)
        agree = betti == rank(g) == census.betti_formula
        mismatches += not agree
        rows.append({
            "vertices": g.num_vertices,
            "edges": [[e.tail, e.head] for e in g.edges],
            "diagonal_cells": census.diagonal_cells,
            "disjoint_pairs": census.disjoint_pairs,
            "tube": [len(tube.vertices), len(tube.edges)],
            "rank": rank(g),
            "betti_oracle": betti,
            "agree": agree,
        })
    json.dump({"graphs": len(rows), "mismatches": mismatches, "rows": rows},
              sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
