#!/usr/bin/env python3
"""Write graph6 corpora of all graphs on up to 7 vertices (networkx atlas)."""
import pathlib
import networkx as nx

out = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data"
out.mkdir(parents=True, exist_ok=True)

atlas = [g for g in nx.graph_atlas_g() if g.number_of_nodes() >= 1]
with open(out / "graphs_upto7.g6", "w") as all_f, open(out / "connected_upto7.g6", "w") as conn_f:
    for g in atlas:
        line = nx.to_graph6_bytes(g, header=False).decode().strip()
        all_f.write(line + "\n")
        if nx.is_connected(g):
            conn_f.write(line + "\n")
