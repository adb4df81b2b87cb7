"""Brute-force permutation oracle, kept independent of the search kernel.

It enumerates every vertex ordering with vertex 0 first and checks it, with
no pruning at all. Only usable for very small graphs.
"""

from __future__ import annotations

from itertools import permutations

from ..graph_core import Graph


def naive_count_hc(g: Graph, convention: str = "canonical") -> int:
    if g.n < 2 or (not g.directed and g.n < 3):
        return 0
    arcs = set(g.edge_list())
    if not g.directed:
        arcs |= {(b, a) for a, b in arcs}
    total = 0
    for rest in permutations(range(1, g.n)):
        seq = (0,) + rest
        if all((seq[i], seq[(i + 1) % g.n]) in arcs for i in range(g.n)):
            total += 1
    if not g.directed and convention == "canonical":
        total //= 2
    return total


def naive_has_path(g: Graph, u: int, w: int) -> bool:
    arcs = set(g.edge_list())
    if not g.directed:
        arcs |= {(b, a) for a, b in arcs}
    middle = [v for v in range(g.n) if v not in (u, w)]
    for perm in permutations(middle):
        seq = (u,) + perm + (w,)
        if all((seq[i], seq[i + 1]) in arcs for i in range(len(seq) - 1)):
            return True
    return False
