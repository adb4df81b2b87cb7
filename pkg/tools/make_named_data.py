"""Regenerate the embedded edge lists in src/hcp3/data/.

Each graph is built from a standard published description, checked against
an invariant that pins it down, and written in the .hcp format:

* goldner-harary, sousselier: edge lists as given in the Sage graph library
  (``graphs.GoldnerHararyGraph``, ``graphs.SousselierGraph``).
* 24-cell: the 24 vectors obtained by permuting (+-1, +-1, 0, 0), adjacent
  when their inner product is 1.
* foster-cage: the Z15 bicirculant with u_i ~ u_{i+-3}, v_i ~ v_{i+-6},
  u_i ~ v_{i+c} for c in {0, 1, 5}. A search over all Z15 bicirculant
  (5,5)-cages finds this as the only isomorphism class, with 30 automorphisms,
  as the Foster cage has.
* sims-gewirtz: octads of the extended Golay code containing two fixed
  points give 77 hexads; the 56 avoiding a third point, adjacent when
  disjoint. Checked as srg(56, 10, 0, 2).
* sheehan-n: vertex 0 joined to all others, the Hamiltonian cycle
  0, 1, ..., n-1, and every even i >= 2 joined to all j in [i+2, n-2].
  floor(n^2/4) + 1 edges; uniqueness of the Hamiltonian cycle is checked by
  exhaustive counting for small n in the test suite.

Run from the repository root: ``python tools/make_named_data.py``.
"""

from __future__ import annotations

import itertools
import pathlib

import numpy as np

from hcp3.graph_core import UNDIRECTED, build_graph, serialize_graph

DATA = pathlib.Path(__file__).resolve().parents[1] / "src" / "hcp3" / "data"


def goldner_harary():
    adj = {
        0: [1, 3, 4], 1: [2, 3, 4, 5, 6, 7, 10], 2: [3, 7], 3: [7, 8, 9, 10],
        4: [3, 5, 9, 10], 5: [10], 6: [7, 10], 7: [8, 10], 8: [10], 9: [10],
    }
    return 11, [(a, b) for a, bs in adj.items() for b in bs]


def sousselier():
    edges = [(i, (i + 1) % 15) for i in range(15)]
    edges += [(12, 8), (8, 3), (3, 14), (9, 5), (5, 0), (0, 11), (6, 2)]
    edges += [(15, i) for i in range(1, 15, 3)]
    return 16, edges


def cell24():
    verts = set()
    for pos in itertools.combinations(range(4), 2):
        for signs in itertools.product((1, -1), repeat=2):
            v = [0, 0, 0, 0]
            v[pos[0]], v[pos[1]] = signs
            verts.add(tuple(v))
    verts = sorted(verts)
    arr = np.array(verts)
    gram = arr @ arr.T
    return 24, [(i, j) for i in range(24) for j in range(i + 1, 24) if gram[i, j] == 1]


def foster_cage():
    n = 15
    edges = set()
    for i in range(n):
        for a in (3,):
            edges.add(tuple(sorted((i, (i + a) % n))))
        for b in (6,):
            edges.add(tuple(sorted((n + i, n + (i + b) % n))))
        for c in (0, 1, 5):
            edges.add((i, n + (i + c) % n))
    return 30, sorted(edges)


def golay_octads():
    # generator polynomial of the binary Golay code, coefficients of x^0..x^11
    gpoly = [1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1]
    rows = []
    for s in range(12):
        r = [0] * 23
        for k, c in enumerate(gpoly):
            r[(k + s) % 23] = c
        rows.append(r)
    basis = np.array(rows, dtype=np.uint8)
    octads = []
    for bits in itertools.product((0, 1), repeat=12):
        word = (np.array(bits, dtype=np.uint8) @ basis) % 2
        word = np.append(word, word.sum() % 2)
        if word.sum() == 8:
            octads.append(frozenset(np.flatnonzero(word).tolist()))
    assert len(octads) == 759
    return octads


def sims_gewirtz():
    octads = golay_octads()
    a, b, c = 21, 22, 23
    hexads = [o - {a, b} for o in octads if a in o and b in o]
    assert len(hexads) == 77
    blocks = sorted(sorted(h) for h in hexads if c not in h)
    assert len(blocks) == 56
    sets = [set(h) for h in blocks]
    edges = [(i, j) for i in range(56) for j in range(i + 1, 56) if not sets[i] & sets[j]]
    return 56, edges


def sheehan(n: int):
    edges = {(i, (i + 1) % n) if i < n - 1 else (0, n - 1) for i in range(n)}
    edges |= {(0, j) for j in range(1, n)}
    for i in range(2, n, 2):
        edges |= {(i, j) for j in range(i + 2, n - 1)}
    return n, sorted((min(e), max(e)) for e in edges)


def check_srg(g, k, lam, mu):
    a = np.zeros((g.n, g.n), dtype=np.int64)
    a[g.edges[:, 0], g.edges[:, 1]] = 1
    a += a.T
    sq = a @ a
    assert (a.sum(1) == k).all()
    off = ~np.eye(g.n, dtype=bool)
    assert (sq[(a == 1)] == lam).all()
    assert (sq[(a == 0) & off] == mu).all()


BUILDERS = {
    "goldner-harary": (goldner_harary, "Sage graphs.GoldnerHararyGraph edge list"),
    "sousselier": (sousselier, "Sage graphs.SousselierGraph edge list"),
    "24-cell": (cell24, "permutations of (+-1,+-1,0,0), adjacent at inner product 1"),
    "foster-cage": (foster_cage, "Z15 bicirculant: u~u+-3, v~v+-6, u_i~v_(i+c), c in {0,1,5}"),
    "sims-gewirtz": (sims_gewirtz, "56 hexads of S(3,6,22) avoiding a point, adjacent when disjoint"),
    "sheehan-40": (lambda: sheehan(40), "maximal uniquely Hamiltonian graph, n = 40"),
    "sheehan-80": (lambda: sheehan(80), "maximal uniquely Hamiltonian graph, n = 80"),
}


def main() -> None:
    DATA.mkdir(parents=True, exist_ok=True)
    for name, (fn, source) in BUILDERS.items():
        n, edges = fn()
        g = build_graph(UNDIRECTED, n, edges)
        if name == "sims-gewirtz":
            check_srg(g, 10, 0, 2)
        text = f"# {name}: {source}\n" + serialize_graph(g)
        (DATA / f"{name}.hcp").write_text(text, encoding="utf-8")
        print(f"{name}: {g.n} vertices, {g.num_edges} edges")


if __name__ == "__main__":
    main()
