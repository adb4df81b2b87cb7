"""Benchmark instances and small random graphs."""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .graph_core import DIRECTED, UNDIRECTED, Graph, build_graph, degrees, parse_graph


class UnknownInstance(KeyError):
    pass


class SignatureMismatch(ValueError):
    """Embedded data does not match its recorded degree signature."""


def complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete graph needs n >= 1")
    iu, ju = np.triu_indices(n, 1)
    return build_graph(UNDIRECTED, n, np.stack([iu, ju], 1))


def andrasfai(k: int) -> Graph:
    """Circulant on 3k - 1 vertices; i ~ i + j for every j = 1 (mod 3)."""
    if k < 1:
        raise ValueError("Andrasfai graph needs k >= 1")
    n = 3 * k - 1
    steps = [j for j in range(1, n) if j % 3 == 1]
    edges = {(min(i, (i + j) % n), max(i, (i + j) % n)) for i in range(n) for j in steps}
    return build_graph(UNDIRECTED, n, sorted(edges))


def _is_prime(q: int) -> bool:
    return q >= 2 and all(q % p for p in range(2, int(q**0.5) + 1))


def paley(q: int) -> Graph:
    """i ~ j iff i - j is a nonzero square mod q (q prime, q = 1 mod 4)."""
    if not _is_prime(q):
        raise ValueError(f"Paley graph needs a prime order, got {q}")
    if q % 4 != 1:
        raise ValueError(f"Paley graph needs q = 1 (mod 4), got {q}")
    squares = {(x * x) % q for x in range(1, q)}
    edges = [(i, j) for i in range(q) for j in range(i + 1, q) if (j - i) % q in squares]
    return build_graph(UNDIRECTED, q, edges)


_KNIGHT = [(1, 2), (2, 1), (2, -1), (1, -2)]


def knight(rows: int, cols: int) -> Graph:
    """Squares of a rows x cols board, adjacent when a knight's move apart.
    Square (r, c) is vertex r * cols + c."""
    if rows < 1 or cols < 1:
        raise ValueError("board needs at least one row and column")
    edges = []
    for r in range(rows):
        for c in range(cols):
            for dr, dc in _KNIGHT:
                r2, c2 = r + dr, c + dc
                if 0 <= r2 < rows and 0 <= c2 < cols:
                    edges.append((r * cols + c, r2 * cols + c2))
    return build_graph(UNDIRECTED, rows * cols, edges)


def random_graph(n: int, p: float, seed: int, directed: bool = False) -> Graph:
    """Erdos-Renyi G(n, p); each ordered (directed) or unordered pair independently."""
    rng = np.random.default_rng(seed)
    if directed:
        pairs = np.array([(a, b) for a in range(n) for b in range(n) if a != b], dtype=np.int64)
    else:
        pairs = np.array([(a, b) for a in range(n) for b in range(a + 1, n)], dtype=np.int64)
    if not len(pairs):
        return build_graph(DIRECTED if directed else UNDIRECTED, n, [])
    keep = rng.random(len(pairs)) < p
    return build_graph(DIRECTED if directed else UNDIRECTED, n, pairs[keep])


@dataclass(frozen=True)
class NamedInstance:
    """One benchmark instance with its published size figures."""

    name: str
    vertices: int
    edges: int
    max_degree: int
    mean_degree: float
    sgate_vertices: int
    quick_vertices: int | None = None

    def check(self, g: Graph) -> None:
        prof = degrees(g)
        got = (g.n, g.num_edges, prof.max_degree, round(prof.mean_degree, 4))
        want = (self.vertices, self.edges, self.max_degree, round(self.mean_degree, 4))
        if got != want:
            raise SignatureMismatch(f"{self.name}: expected (N, e, max, mean) = {want}, got {got}")


# name, N, e, max degree, mean degree, s-gate vertices, quick-pipeline vertices
TABLE1 = [
    NamedInstance("k10", 10, 45, 9, 9.0, 1_090, 3_560),
    NamedInstance("goldner-harary", 11, 27, 8, 54 / 11, 336, 1_594),
    NamedInstance("sousselier", 16, 27, 5, 3.375, 96, 932),
    NamedInstance("andrasfai-6", 17, 51, 6, 6.0, 782, 3_502),
    NamedInstance("24-cell", 24, 96, 8, 8.0, 2_064, 7_344),
    NamedInstance("paley-29", 29, 203, 14, 14.0, 7_366, 17_574),
    NamedInstance("foster-cage", 30, 75, 5, 5.0, 870, 4_680),
    NamedInstance("sheehan-40", 40, 401, 39, 20.05, 24_784, 36_316),
    NamedInstance("sims-gewirtz", 56, 280, 10, 10.0, 7_504, 22_736),
    NamedInstance("knight-8x8", 64, 168, 8, 5.25, 2_416, 10_592),
    NamedInstance("sheehan-80", 80, 1_601, 79, 40.025, 186_324, 152_556),
    NamedInstance("k100", 100, 4_950, 99, 99.0, 1_036_900, 485_600),
]
INSTANCES = {inst.name: inst for inst in TABLE1}

_EMBEDDED = ("goldner-harary", "sousselier", "24-cell", "foster-cage", "sims-gewirtz", "sheehan-40", "sheehan-80")


def _load_embedded(name: str) -> Graph:
    text = resources.files("hcp3").joinpath("data", f"{name}.hcp").read_text(encoding="utf-8")
    return parse_graph(text)


def named(name: str) -> Graph:
    """A benchmark instance by name, checked against its degree signature."""
    key = name.lower()
    if key not in INSTANCES:
        raise UnknownInstance(f"unknown instance {name!r}; known: {', '.join(INSTANCES)}")
    if key in _EMBEDDED:
        g = _load_embedded(key)
    else:
        g = generate(key)
    INSTANCES[key].check(g)
    return g


_PATTERNS = [
    (re.compile(r"^k(\d+)$"), lambda m: complete(int(m[1]))),
    (re.compile(r"^andrasfai[:-](\d+)$"), lambda m: andrasfai(int(m[1]))),
    (re.compile(r"^paley[:-](\d+)$"), lambda m: paley(int(m[1]))),
    (re.compile(r"^knight[:-](\d+)x(\d+)$"), lambda m: knight(int(m[1]), int(m[2]))),
]


def generate(spec: str) -> Graph:
    """Build a graph from a name (``sousselier``) or a family spec
    (``k10``, ``andrasfai:6``, ``paley:29``, ``knight:8x8``)."""
    key = spec.lower()
    for pat, fn in _PATTERNS:
        m = pat.match(key)
        if m:
            return fn(m)
    if key in _EMBEDDED:
        return named(key)
    raise UnknownInstance(f"cannot generate {spec!r}")
