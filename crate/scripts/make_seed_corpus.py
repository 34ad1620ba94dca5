"""Regenerate data/graphs/ (the shipped seed corpus).

Families: every connected graph on 2..6 vertices, connected cubic graphs on
4..10 vertices, complete graphs K2..K7, complete bipartite K_{a,b} (a, b <= 4),
paths and cycles up to 10 vertices, trees up to 8 vertices, and the Petersen,
prism and cube graphs. Isomorphic duplicates keep the first (most specific)
name.
"""
import itertools
import os
import random
import sys

import networkx as nx

OUT = os.path.join(os.path.dirname(__file__), "..", "data", "graphs")


def cubic_graphs(n, want):
    found = []
    rng = random.Random(1)
    tries = 0
    while len(found) < want:
        tries += 1
        if tries > 2_000_000:
            sys.exit(f"only found {len(found)} cubic graphs on {n} vertices")
        g = nx.random_regular_graph(3, n, seed=rng.randrange(1 << 30))
        if not nx.is_connected(g):
            continue
        if any(nx.is_isomorphic(g, h) for h in found):
            continue
        found.append(g)
    return found


def main():
    named = []
    named.append(("petersen", nx.petersen_graph()))
    named.append(("prism", nx.circular_ladder_graph(3)))
    named.append(("cube", nx.hypercube_graph(3)))
    for n in range(2, 8):
        named.append((f"complete_{n}", nx.complete_graph(n)))
    for a in range(1, 5):
        for b in range(a, 5):
            named.append((f"complete_bipartite_{a}_{b}", nx.complete_bipartite_graph(a, b)))
    for n in range(2, 11):
        named.append((f"path_{n}", nx.path_graph(n)))
    for n in range(3, 11):
        named.append((f"cycle_{n}", nx.cycle_graph(n)))
    for n, want in [(4, 1), (6, 2), (8, 5), (10, 19)]:
        for i, g in enumerate(sorted(cubic_graphs(n, want), key=lambda g: nx.weisfeiler_lehman_graph_hash(g))):
            named.append((f"cubic_{n}_{i}", g))
    for n in range(2, 9):
        for i, g in enumerate(nx.nonisomorphic_trees(n)):
            named.append((f"tree_{n}_{i}", g))
    counters = {}
    for g in nx.graph_atlas_g():
        n = g.number_of_nodes()
        if 2 <= n <= 6 and nx.is_connected(g):
            i = counters.get(n, 0)
            counters[n] = i + 1
            named.append((f"connected_{n}_{i}", g))

    kept = []
    for name, g in named:
        g = nx.convert_node_labels_to_integers(g)
        if any(nx.is_isomorphic(g, h) for _, h in kept):
            continue
        kept.append((name, g))

    os.makedirs(OUT, exist_ok=True)
    for f in os.listdir(OUT):
        if f.endswith(".txt"):
            os.remove(os.path.join(OUT, f))
    for name, g in kept:
        with open(os.path.join(OUT, name + ".txt"), "w") as fh:
            fh.write(f"n={g.number_of_nodes()}\n")
            for u, v in sorted(tuple(sorted(e)) for e in g.edges()):
                fh.write(f"{u} {v}\n")
    print(len(kept), "graphs written")


if __name__ == "__main__":
    main()
