"""Writes every connected graph on 1..7 vertices, one per line, up to isomorphism.

Source: the networkx graph atlas. Line format: n m u1 v1 u2 v2 ...
"""
import sys

import networkx as nx


def main(path):
    lines = []
    for g in nx.graph_atlas_g():
        n = g.number_of_nodes()
        if n == 0 or not nx.is_connected(g):
            continue
        edges = sorted(tuple(sorted(e)) for e in g.edges())
        flat = " ".join(f"{u} {v}" for u, v in edges)
        lines.append(f"{n} {len(edges)} {flat}".rstrip())
    with open(path, "w") as out:
        out.write("\n".join(lines) + "\n")


if __name__ == "__main__":
    main(sys.argv[1])
