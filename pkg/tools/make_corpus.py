"""Regenerate tests/data/corpus.json.

* every connected undirected graph on 1..6 vertices up to isomorphism
  (networkx graph atlas; 143 graphs);
* every tournament on 1..5 vertices up to isomorphism (brute-force canonical
  form; 1, 1, 2, 4, 12 graphs);
* 50 seeded Erdos-Renyi graphs on 7-8 vertices, 25 undirected, 25 directed.

Run from the repository root: ``python tools/make_corpus.py``.
"""

from __future__ import annotations

import itertools
import json
import pathlib

import networkx as nx

from hcp3.generators import random_graph

OUT = pathlib.Path(__file__).resolve().parents[1] / "tests" / "data" / "corpus.json"


def connected_graphs(max_n: int = 6):
    for i, G in enumerate(nx.graph_atlas_g()):
        if 1 <= G.number_of_nodes() <= max_n and nx.is_connected(G):
            edges = sorted(tuple(sorted(e)) for e in G.edges())
            yield {"name": f"atlas-{i}", "mode": "undirected", "n": G.number_of_nodes(), "edges": edges}


def tournaments(max_n: int = 5):
    for n in range(1, max_n + 1):
        pairs = list(itertools.combinations(range(n), 2))
        perms = list(itertools.permutations(range(n)))
        seen = set()
        reps = []
        for bits in itertools.product((0, 1), repeat=len(pairs)):
            arcs = [(a, b) if s else (b, a) for (a, b), s in zip(pairs, bits)]
            canon = min(tuple(sorted((p[a], p[b]) for a, b in arcs)) for p in perms)
            if canon not in seen:
                seen.add(canon)
                reps.append(canon)
        for i, arcs in enumerate(sorted(reps)):
            yield {"name": f"tournament-{n}-{i}", "mode": "directed", "n": n, "edges": [list(a) for a in arcs]}


def random_instances():
    for seed in range(50):
        directed = seed % 2 == 1
        n = 7 + (seed // 2) % 2
        p = 0.35 if directed else 0.45
        g = random_graph(n, p, seed=1000 + seed, directed=directed)
        yield {"name": f"random-{seed}", "mode": g.mode, "n": n, "edges": g.edge_list()}


def main() -> None:
    corpus = list(connected_graphs()) + list(tournaments()) + list(random_instances())
    for item in corpus:
        item["edges"] = [list(map(int, e)) for e in item["edges"]]
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(corpus, indent=None, separators=(",", ":")) + "\n", encoding="utf-8")
    kinds = {}
    for item in corpus:
        key = item["name"].split("-")[0]
        kinds[key] = kinds.get(key, 0) + 1
    print(f"wrote {len(corpus)} graphs: {kinds}")


if __name__ == "__main__":
    main()
