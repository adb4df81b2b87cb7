"""Instance representation, degree accounting, text formats and provenance.

Graphs are immutable. Vertices are the integers ``0..n-1``; edges live in an
``(E, 2)`` integer array kept in lexicographic order, so every traversal of a
graph is deterministic. Undirected edges are stored once with ``u < v``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

DIRECTED = "directed"
UNDIRECTED = "undirected"
_MODES = (DIRECTED, UNDIRECTED)


class GraphError(ValueError):
    """Base class for malformed graph data."""


class SelfLoopError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class EndpointRangeError(GraphError):
    pass


class ParseError(GraphError):
    """Raised by the text readers; carries the 1-based line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class ProvenanceError(ValueError):
    pass


class ProjectionError(ValueError):
    """A lifted cycle is not a Hamiltonian cycle of the origin graph."""


# ---------------------------------------------------------------------------
# Graph
# ---------------------------------------------------------------------------


def _as_edge_array(edges) -> np.ndarray:
    arr = np.asarray(edges, dtype=np.int64)
    if arr.size == 0:
        return np.zeros((0, 2), dtype=np.int64)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise GraphError(f"edge list must have shape (E, 2), got {arr.shape}")
    return arr


def _canonical_edges(directed: bool, n: int, edges) -> np.ndarray:
    arr = _as_edge_array(edges)
    if len(arr) == 0:
        return arr
    bad = (arr < 0) | (arr >= n)
    if bad.any():
        i = int(np.flatnonzero(bad.any(axis=1))[0])
        u, v = arr[i]
        raise EndpointRangeError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
    loops = arr[:, 0] == arr[:, 1]
    if loops.any():
        i = int(np.flatnonzero(loops)[0])
        u, v = arr[i]
        raise SelfLoopError(f"self-loop ({u}, {v})")
    if not directed:
        arr = np.sort(arr, axis=1)
    order = np.lexsort((arr[:, 1], arr[:, 0]))
    arr = arr[order]
    dup = (arr[1:] == arr[:-1]).all(axis=1)
    if dup.any():
        i = int(np.flatnonzero(dup)[0])
        u, v = arr[i]
        raise DuplicateEdgeError(f"duplicate edge ({u}, {v})")
    return np.ascontiguousarray(arr)


@dataclass(frozen=True, eq=False)
class Graph:
    """A simple graph. Build instances with :func:`build_graph`."""

    mode: str
    n: int
    edges: np.ndarray = field(repr=False)

    @property
    def directed(self) -> bool:
        return self.mode == DIRECTED

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.mode == other.mode
            and self.n == other.n
            and np.array_equal(self.edges, other.edges)
        )

    def __hash__(self) -> int:
        return hash((self.mode, self.n, self.edges.tobytes()))

    def __repr__(self) -> str:
        return f"Graph({self.mode}, n={self.n}, e={self.num_edges})"

    def edge_list(self) -> list[tuple[int, int]]:
        return [(int(u), int(v)) for u, v in self.edges]

    @cached_property
    def out_csr(self) -> tuple[np.ndarray, np.ndarray]:
        """``(indptr, indices)`` of out-neighbours (all neighbours if undirected)."""
        src, dst = self.edges[:, 0], self.edges[:, 1]
        if not self.directed:
            src, dst = np.concatenate([src, dst]), np.concatenate([dst, src])
        return _csr(self.n, src, dst)

    @cached_property
    def in_csr(self) -> tuple[np.ndarray, np.ndarray]:
        if not self.directed:
            return self.out_csr
        return _csr(self.n, self.edges[:, 1], self.edges[:, 0])

    def neighbors(self, v: int) -> np.ndarray:
        indptr, indices = self.out_csr
        return indices[indptr[v] : indptr[v + 1]]

    def in_neighbors(self, v: int) -> np.ndarray:
        indptr, indices = self.in_csr
        return indices[indptr[v] : indptr[v + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.neighbors(u)
        i = np.searchsorted(nb, v)
        return bool(i < len(nb) and nb[i] == v)

    @cached_property
    def _edge_keys(self) -> frozenset:
        return frozenset(map(tuple, self.edges.tolist()))


def _csr(n: int, src: np.ndarray, dst: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    order = np.lexsort((dst, src))
    counts = np.bincount(src, minlength=n) if len(src) else np.zeros(n, dtype=np.int64)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return indptr, np.ascontiguousarray(dst[order], dtype=np.int64)


def build_graph(mode: str, vertex_count: int, edge_list: Iterable[Sequence[int]] | np.ndarray) -> Graph:
    """Validate and canonicalise an edge list.

    Raises :class:`SelfLoopError`, :class:`DuplicateEdgeError` or
    :class:`EndpointRangeError`, each naming the offending edge.
    """
    if mode not in _MODES:
        raise GraphError(f"unknown mode {mode!r}")
    if vertex_count < 0:
        raise GraphError("vertex count must be non-negative")
    if not isinstance(edge_list, np.ndarray):
        edge_list = list(edge_list)
    edges = _canonical_edges(mode == DIRECTED, int(vertex_count), edge_list)
    edges.setflags(write=False)
    return Graph(mode, int(vertex_count), edges)


def directed_view(g: Graph) -> Graph:
    """Each undirected edge becomes two antiparallel arcs; directed graphs pass through."""
    if g.directed:
        return g
    arcs = np.concatenate([g.edges, g.edges[:, ::-1]])
    return build_graph(DIRECTED, g.n, arcs)


# ---------------------------------------------------------------------------
# Degrees
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DegreeProfile:
    """Per-vertex degrees plus the ``k`` statistic (sum of in- and out-degrees
    with every undirected edge counted as two arcs)."""

    directed: bool
    in_degree: np.ndarray
    out_degree: np.ndarray
    degree: np.ndarray  # undirected degree, or in + out for digraphs
    k: int

    @property
    def max_degree(self) -> int:
        return int(self.degree.max()) if len(self.degree) else 0

    @property
    def max_in(self) -> int:
        return int(self.in_degree.max()) if len(self.in_degree) else 0

    @property
    def max_out(self) -> int:
        return int(self.out_degree.max()) if len(self.out_degree) else 0

    @property
    def mean_degree(self) -> float:
        return float(self.degree.mean()) if len(self.degree) else 0.0


def degrees(g: Graph) -> DegreeProfile:
    if g.directed:
        outd = np.bincount(g.edges[:, 0], minlength=g.n) if g.num_edges else np.zeros(g.n, np.int64)
        ind = np.bincount(g.edges[:, 1], minlength=g.n) if g.num_edges else np.zeros(g.n, np.int64)
        return DegreeProfile(True, ind, outd, ind + outd, int(2 * g.num_edges))
    deg = np.bincount(g.edges.ravel(), minlength=g.n) if g.num_edges else np.zeros(g.n, np.int64)
    return DegreeProfile(False, deg, deg, deg, int(4 * g.num_edges))


# ---------------------------------------------------------------------------
# Text formats
# ---------------------------------------------------------------------------


def serialize_graph(g: Graph) -> str:
    lines = [f"hcp {g.mode} {g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.edges.tolist())
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    """Parse the ``.hcp`` text format (header ``hcp <mode> <N>``, one edge per line)."""
    header = None
    edges: list[tuple[int, int]] = []
    linenos: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if header is None:
            if len(tokens) != 3 or tokens[0] != "hcp" or tokens[1] not in _MODES:
                raise ParseError(lineno, f"malformed header {line!r}; expected 'hcp <directed|undirected> <N>'")
            try:
                n = int(tokens[2])
            except ValueError:
                raise ParseError(lineno, f"non-integer vertex count {tokens[2]!r}") from None
            if n < 0:
                raise ParseError(lineno, "negative vertex count")
            header = (tokens[1], n)
            continue
        if len(tokens) != 2:
            raise ParseError(lineno, f"expected '<u> <v>', got {line!r}")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise ParseError(lineno, f"non-integer token in {line!r}") from None
        edges.append((u, v))
        linenos.append(lineno)
    if header is None:
        raise ParseError(1, "missing header")
    mode, n = header
    seen = set()
    for (u, v), lineno in zip(edges, linenos):
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(lineno, f"edge ({u}, {v}) out of range for N={n}")
        if u == v:
            raise ParseError(lineno, f"self-loop ({u}, {v})")
        key = (u, v) if mode == DIRECTED else (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(lineno, f"duplicate edge ({u}, {v})")
        seen.add(key)
    return build_graph(mode, n, edges)


def read_graph(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def write_graph(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_graph(g))


def parse_tsplib(text: str) -> Graph:
    """Read a TSPLIB ``HCP`` instance (``EDGE_DATA_FORMAT : EDGE_LIST`` only).

    TSPLIB vertices are 1-based; the result is 0-based and undirected.
    """
    n = None
    fmt = None
    edges: list[tuple[int, int]] = []
    in_edges = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if in_edges:
            tokens = line.split()
            if tokens == ["-1"] or line == "EOF":
                in_edges = False
                continue
            if len(tokens) != 2:
                raise ParseError(lineno, f"expected '<u> <v>' in EDGE_DATA_SECTION, got {line!r}")
            try:
                edges.append((int(tokens[0]) - 1, int(tokens[1]) - 1))
            except ValueError:
                raise ParseError(lineno, f"non-integer token in {line!r}") from None
            continue
        if line == "EOF":
            break
        if line.startswith("EDGE_DATA_SECTION"):
            in_edges = True
            continue
        if ":" in line:
            key, _, value = line.partition(":")
            key, value = key.strip().upper(), value.strip()
            if key == "DIMENSION":
                try:
                    n = int(value)
                except ValueError:
                    raise ParseError(lineno, f"bad DIMENSION {value!r}") from None
            elif key == "EDGE_DATA_FORMAT":
                fmt = value.upper()
            elif key == "TYPE" and value.upper() != "HCP":
                raise ParseError(lineno, f"unsupported TSPLIB TYPE {value!r}")
    if n is None:
        raise ParseError(1, "missing DIMENSION")
    if fmt not in (None, "EDGE_LIST"):
        raise ParseError(1, f"unsupported EDGE_DATA_FORMAT {fmt!r}")
    # TSPLIB files sometimes list an edge in both directions.
    uniq = sorted({(min(u, v), max(u, v)) for u, v in edges})
    try:
        return build_graph(UNDIRECTED, n, uniq)
    except GraphError as exc:
        raise ParseError(1, str(exc)) from None


def export_dot(g: Graph, name: str = "G") -> str:
    kind, arrow = ("digraph", "->") if g.directed else ("graph", "--")
    lines = [f"{kind} {name} {{"]
    lines.extend(f"  {v};" for v in range(g.n))
    lines.extend(f"  {u} {arrow} {v};" for u, v in g.edges.tolist())
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Provenance
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Provenance:
    """Map from every vertex of a converted graph to its origin vertex.

    ``collapsed`` marks conversions that replaced a trivially non-Hamiltonian
    input by a fixed non-Hamiltonian graph; such provenance has no origins.
    ``levels`` keeps the origin map of every composed stage, first stage
    first; it is the hierarchy the oracle uses to split a converted graph
    into gadgets. It takes no part in equality.
    """

    stage: str
    input_n: int
    origin: np.ndarray = field(repr=False)
    collapsed: bool = False
    levels: tuple = field(default=(), repr=False)

    def stage_provenances(self) -> list["Provenance"]:
        """One provenance per composed stage, in pipeline order."""
        out, n = [], self.input_n
        for i, lv in enumerate(self.levels):
            out.append(make_provenance(f"{self.stage}.{i + 1}", n, lv))
            n = len(lv)
        return out

    @property
    def output_n(self) -> int:
        return len(self.origin)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Provenance):
            return NotImplemented
        return (
            self.input_n == other.input_n
            and self.collapsed == other.collapsed
            and np.array_equal(self.origin, other.origin)
        )

    def __hash__(self) -> int:
        return hash((self.input_n, self.collapsed, self.origin.tobytes()))


def make_provenance(stage: str, input_n: int, origin) -> Provenance:
    origin = np.ascontiguousarray(origin, dtype=np.int64)
    if len(origin) and (origin.min() < 0 or origin.max() >= input_n):
        raise ProvenanceError(f"{stage}: origin ids must lie in 0..{input_n - 1}")
    origin.setflags(write=False)
    return Provenance(stage, int(input_n), origin, levels=(origin,))


def identity_provenance(n: int, stage: str = "identity") -> Provenance:
    p = make_provenance(stage, n, np.arange(n, dtype=np.int64))
    return Provenance(p.stage, p.input_n, p.origin)


def collapsed_provenance(stage: str, input_n: int, output_n: int) -> Provenance:
    origin = np.full(output_n, -1, dtype=np.int64)
    origin.setflags(write=False)
    return Provenance(stage, int(input_n), origin, collapsed=True)


def compose_provenance(outer: Provenance, inner: Provenance) -> Provenance:
    """``v -> inner.origin[outer.origin[v]]``; ``outer`` is the later stage."""
    if outer.input_n != inner.output_n:
        raise ProvenanceError(
            f"cannot compose: {outer.stage!r} expects {outer.input_n} vertices, "
            f"{inner.stage!r} produces {inner.output_n}"
        )
    stage = f"{inner.stage}+{outer.stage}"
    if outer.collapsed or inner.collapsed:
        return collapsed_provenance(stage, inner.input_n, outer.output_n)
    origin = inner.origin[outer.origin] if len(outer.origin) else outer.origin.copy()
    p = make_provenance(stage, inner.input_n, origin)
    return Provenance(p.stage, p.input_n, p.origin, levels=inner.levels + outer.levels)


def write_trace(p: Provenance, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_trace(p))


def format_trace(p: Provenance) -> str:
    stage = p.stage.replace(" ", "_")
    lines = [f"trace {stage} {p.input_n} {p.output_n}"]
    lines.extend(f"{i} {o}" for i, o in enumerate(p.origin.tolist()))
    return "\n".join(lines) + "\n"


def parse_trace(text: str) -> Provenance:
    header = None
    origin: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if header is None:
            if len(tokens) != 4 or tokens[0] != "trace":
                raise ParseError(lineno, "malformed trace header; expected 'trace <stage> <input_N> <output_N>'")
            try:
                header = (tokens[1], int(tokens[2]), int(tokens[3]))
            except ValueError:
                raise ParseError(lineno, "non-integer vertex count in trace header") from None
            continue
        if len(tokens) != 2:
            raise ParseError(lineno, f"expected '<new_id> <origin_id>', got {line!r}")
        try:
            new, old = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise ParseError(lineno, f"non-integer token in {line!r}") from None
        if new in origin:
            raise ParseError(lineno, f"vertex {new} listed twice")
        origin[new] = old
    if header is None:
        raise ParseError(1, "missing trace header")
    stage, input_n, output_n = header
    if sorted(origin) != list(range(output_n)):
        raise ParseError(1, f"trace must list every vertex 0..{output_n - 1} exactly once")
    values = np.array([origin[i] for i in range(output_n)], dtype=np.int64)
    # all -1, or nothing covering a non-empty input: the input was collapsed
    if (output_n and (values == -1).all()) or output_n < 1 <= input_n:
        return collapsed_provenance(stage, input_n, output_n)
    try:
        return make_provenance(stage, input_n, values)
    except ProvenanceError as exc:
        raise ParseError(1, str(exc)) from None


def read_trace(path) -> Provenance:
    with open(path, encoding="utf-8") as fh:
        return parse_trace(fh.read())


# ---------------------------------------------------------------------------
# Cycles
# ---------------------------------------------------------------------------


def is_hamiltonian_cycle(g: Graph, cycle: Sequence[int]) -> bool:
    """Distinct vertices, every vertex present, consecutive (and last->first) adjacent.

    An undirected cycle needs at least three vertices; a directed one at least two.
    """
    cyc = [int(v) for v in cycle]
    if len(cyc) != g.n or len(set(cyc)) != g.n:
        return False
    if g.n < (2 if g.directed else 3):
        return False
    keys = g._edge_keys
    for a, b in zip(cyc, cyc[1:] + cyc[:1]):
        key = (a, b) if g.directed else (min(a, b), max(a, b))
        if key not in keys:
            return False
    return True


def is_hamiltonian_path(g: Graph, path: Sequence[int]) -> bool:
    p = [int(v) for v in path]
    if len(p) != g.n or len(set(p)) != g.n or g.n == 0:
        return False
    keys = g._edge_keys
    for a, b in zip(p, p[1:]):
        key = (a, b) if g.directed else (min(a, b), max(a, b))
        if key not in keys:
            return False
    return True


def project_cycle(p: Provenance, cycle: Sequence[int], origin_graph: Graph) -> list[int]:
    """Lift a Hamiltonian cycle of a converted graph back to the origin graph.

    Each vertex is mapped to its origin and runs of equal origins are merged
    (cyclically). The result is checked against ``origin_graph``; a directed
    origin may come back reversed when the converted graph is undirected, in
    which case the reversed order is returned.
    """
    if p.collapsed:
        raise ProjectionError(f"{p.stage}: provenance collapsed to a non-Hamiltonian stand-in")
    if origin_graph.n != p.input_n:
        raise ProvenanceError(f"origin graph has {origin_graph.n} vertices, provenance expects {p.input_n}")
    if len(cycle) != p.output_n:
        raise ProjectionError(f"cycle has {len(cycle)} vertices, converted graph has {p.output_n}")
    mapped = p.origin[np.asarray(cycle, dtype=np.int64)].tolist()
    seq: list[int] = []
    for v in mapped:
        if not seq or seq[-1] != v:
            seq.append(v)
    while len(seq) > 1 and seq[0] == seq[-1]:
        seq.pop()
    if len(set(seq)) != len(seq):
        raise ProjectionError("projection revisits an origin vertex non-consecutively")
    if is_hamiltonian_cycle(origin_graph, seq):
        return seq
    rev = seq[:1] + seq[:0:-1]
    if origin_graph.directed and is_hamiltonian_cycle(origin_graph, rev):
        return rev
    raise ProjectionError("projected sequence is not a Hamiltonian cycle of the origin graph")
