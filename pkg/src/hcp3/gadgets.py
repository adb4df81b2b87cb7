"""Gadget templates and vertex replacement.

A gadget is a small graph with ordered attachment points. Replacing a vertex
``v`` by a gadget removes ``v``, appends the gadget's vertices after all
surviving vertices and reconnects each edge formerly incident to ``v`` to an
attachment. Incident edges are matched to attachments in ascending order of
neighbour id, separately for incoming and outgoing arcs.

Labels in the docstrings below are the 1-based labels of the usual drawings;
the arrays are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping

import numpy as np

from .graph_core import (
    DIRECTED,
    UNDIRECTED,
    Graph,
    Provenance,
    build_graph,
    degrees,
    make_provenance,
)

IN, OUT, UND = "in", "out", "undirected"


class AttachmentError(ValueError):
    """The edges at a vertex do not fit the gadget's attachments."""


@dataclass(frozen=True)
class Gadget:
    """Template subgraph.

    ``attachments`` lists ``(vertex, orientation)`` pairs. Normally each
    attachment carries exactly one external edge. With ``pooled=True`` (the
    split family) an attachment is a receiving vertex that takes any number of
    external edges of its orientation; two receivers of the same orientation
    share the edges, the first taking the larger half.
    """

    name: str
    mode: str
    n: int
    edges: tuple[tuple[int, int], ...]
    attachments: tuple[tuple[int, str], ...]
    pooled: bool = False

    def __post_init__(self):
        verts = [a for a, _ in self.attachments]
        if len(set(verts)) != len(verts):
            raise ValueError(f"{self.name}: attachment vertices must be distinct")
        if any(not 0 <= a < self.n for a in verts):
            raise ValueError(f"{self.name}: attachment outside the gadget")
        build_graph(self.mode, self.n, self.edges)  # validates internal edges

    @property
    def graph(self) -> Graph:
        return _gadget_graph(self)

    def attachment_vertices(self, orientation: str | None = None) -> list[int]:
        return [a for a, o in self.attachments if orientation is None or o == orientation]

    def entry_vertices(self) -> list[int]:
        return [a for a, o in self.attachments if o in (IN, UND)]

    def exit_vertices(self) -> list[int]:
        return [a for a, o in self.attachments if o in (OUT, UND)]

    def external_degree(self) -> np.ndarray:
        """Internal degree plus one per (non-pooled) attachment."""
        g = self.graph
        prof = degrees(g)
        deg = prof.degree.copy() if not g.directed else _undirected_degree(g)
        for a, _ in self.attachments:
            deg[a] += 1
        return deg

    def block(self, in_count: int, out_count: int | None = None) -> "Block":
        """Wiring for a vertex with ``in_count`` incoming and ``out_count``
        outgoing edges (undirected: pass the degree as ``in_count``)."""
        return _block(self, in_count, out_count)


def _undirected_degree(g: Graph) -> np.ndarray:
    pairs = {(min(u, v), max(u, v)) for u, v in g.edge_list()}
    deg = np.zeros(g.n, dtype=np.int64)
    for u, v in pairs:
        deg[u] += 1
        deg[v] += 1
    return deg


@lru_cache(maxsize=None)
def _gadget_graph(gadget: Gadget) -> Graph:
    return build_graph(gadget.mode, gadget.n, gadget.edges)


@dataclass(frozen=True, eq=False)
class Block:
    """A gadget instantiated for one incidence pattern.

    ``in_map[i]`` is the local vertex receiving the i-th incoming edge (by
    ascending neighbour id); ``out_map`` likewise for outgoing edges. For
    undirected graphs only ``in_map`` is used.
    """

    n: int
    edges: np.ndarray = field(repr=False)
    in_map: np.ndarray = field(repr=False)
    out_map: np.ndarray = field(repr=False)
    directed: bool


def _share(receivers: list[int], k: int) -> np.ndarray:
    if not receivers:
        if k:
            raise AttachmentError("gadget has no receiver for these edges")
        return np.zeros(0, dtype=np.int64)
    if len(receivers) == 1:
        return np.full(k, receivers[0], dtype=np.int64)
    if len(receivers) != 2:
        raise AttachmentError("pooled gadgets support at most two receivers per orientation")
    first = (k + 1) // 2
    return np.array([receivers[0]] * first + [receivers[1]] * (k - first), dtype=np.int64)


@lru_cache(maxsize=4096)
def _block(gadget: Gadget, in_count: int, out_count: int | None) -> Block:
    edges = np.array(gadget.edges, dtype=np.int64).reshape(-1, 2)
    directed = gadget.mode == DIRECTED
    if not directed:
        if out_count is not None:
            raise AttachmentError(f"{gadget.name} is undirected; pass only the degree")
        atts = gadget.attachment_vertices(UND)
        if gadget.pooled or len(atts) != in_count:
            raise AttachmentError(f"{gadget.name} has {len(atts)} attachments, vertex has degree {in_count}")
        return Block(gadget.n, edges, np.array(atts, dtype=np.int64), np.zeros(0, np.int64), False)
    if out_count is None:
        raise AttachmentError(f"{gadget.name} is directed; pass in- and out-degree")
    ins, outs = gadget.attachment_vertices(IN), gadget.attachment_vertices(OUT)
    if gadget.pooled:
        in_map, out_map = _share(ins, in_count), _share(outs, out_count)
    else:
        if len(ins) != in_count or len(outs) != out_count:
            raise AttachmentError(
                f"{gadget.name} has ({len(ins)}, {len(outs)}) in/out attachments, "
                f"vertex has ({in_count}, {out_count})"
            )
        in_map, out_map = np.array(ins, dtype=np.int64), np.array(outs, dtype=np.int64)
    return Block(gadget.n, edges, in_map, out_map, True)


# ---------------------------------------------------------------------------
# Templates
# ---------------------------------------------------------------------------


def diamond() -> Gadget:
    """K4 minus an edge; the two degree-2 corners are the attachments."""
    return _DIAMOND


_DIAMOND = Gadget(
    "diamond", UNDIRECTED, 4,
    ((0, 1), (0, 2), (1, 2), (1, 3), (2, 3)),
    ((0, UND), (3, UND)),
)

# Core of every s-gate, labels 1..10.
_GATE_CORE = (
    (1, 3), (1, 8), (2, 3), (2, 5), (3, 4), (4, 5),
    (4, 6), (6, 7), (7, 8), (7, 10), (8, 9), (9, 10),
)


@lru_cache(maxsize=None)
def s_gate(s: int) -> Gadget:
    """The s-gate: a 10-vertex core plus a bottom row of ``2s - 7`` vertices.

    Bottom vertices with odd position carry external edges, those with even
    position are joined to the top vertex (label 1). Attachment order is
    top, left (2), right (9), then the bottom attachments left to right.
    """
    if s < 4:
        raise ValueError(f"s-gate needs s >= 4, got {s}")
    row = 2 * s - 7
    bottom = [10 + j for j in range(1, row + 1)]  # 1-based labels
    edges = list(_GATE_CORE)
    edges += [(bottom[j], bottom[j + 1]) for j in range(row - 1)]
    edges += [(5, bottom[0]), (10, bottom[-1])]
    edges += [(1, bottom[j - 1]) for j in range(2, row + 1, 2)]
    atts = [1, 2, 9] + [bottom[j - 1] for j in range(1, row + 1, 2)]
    return Gadget(
        f"{s}-gate", UNDIRECTED, 2 * s + 3,
        tuple(sorted((min(u, v) - 1, max(u, v) - 1) for u, v in edges)),
        tuple((a - 1, UND) for a in atts),
    )


def substitute(outer: Gadget, x: int, inner: Gadget) -> Gadget:
    """Replace internal vertex ``x`` of ``outer`` by ``inner``.

    External edges of ``outer`` are modelled as pendant vertices so the usual
    replacement rules apply; the surviving vertices of ``outer`` keep their
    order and ``inner``'s vertices follow.
    """
    if outer.pooled or inner.pooled:
        raise AttachmentError("cannot nest pooled gadgets")
    mode = outer.mode
    pend = list(range(outer.n, outer.n + len(outer.attachments)))
    edges = list(outer.edges)
    for p, (a, o) in zip(pend, outer.attachments):
        edges.append((p, a) if o == IN else (a, p))
    host = build_graph(mode, outer.n + len(pend), edges)
    new, prov = replace_vertex(host, x, inner)
    keep = [v for v in range(new.n) if v < outer.n - 1 or v >= outer.n - 1 + len(pend)]
    relabel = {v: i for i, v in enumerate(keep)}
    pend_new = list(range(outer.n - 1, outer.n - 1 + len(pend)))
    pend_set = set(pend_new)
    new_edges = []
    att_of = {}
    for u, v in new.edge_list():
        if u in pend_set:
            att_of[u] = v
        elif v in pend_set:
            att_of[v] = u
        else:
            new_edges.append((relabel[u], relabel[v]))
    atts = tuple((relabel[att_of[p]], o) for p, (_, o) in zip(pend_new, outer.attachments))
    return Gadget(f"{outer.name}<{inner.name}>", mode, len(keep), tuple(sorted(new_edges)), atts)


@lru_cache(maxsize=None)
def expanded_s_gate(s: int) -> Gadget:
    """Sub-cubic s-gate: the top vertex (degree s-1) is replaced recursively by
    smaller expanded gates until the innermost one is a 4-gate."""
    if s < 4:
        raise ValueError(f"s-gate needs s >= 4, got {s}")
    if s == 4:
        return s_gate(4)
    g = substitute(s_gate(s), 0, expanded_s_gate(s - 1))
    return Gadget(f"expanded-{s}-gate", g.mode, g.n, g.edges, g.attachments)


def _as_directed(g: Gadget, name: str, orientations: list[str]) -> Gadget:
    arcs = sorted(set(g.edges) | {(v, u) for u, v in g.edges})
    atts = tuple((a, o) for (a, _), o in zip(g.attachments, orientations))
    return Gadget(name, DIRECTED, g.n, tuple(arcs), atts)


@lru_cache(maxsize=None)
def sr_gate(s_in: int, r_out: int) -> Gadget:
    """Expanded (s+r)-gate with the first ``s_in`` attachments incoming and the
    rest outgoing; internal edges become antiparallel arc pairs."""
    if s_in < 0 or r_out < 0 or s_in + r_out < 4:
        raise ValueError(f"(s,r)-gate needs s + r >= 4, got ({s_in}, {r_out})")
    base = expanded_s_gate(s_in + r_out)
    return _as_directed(base, f"({s_in},{r_out})-gate", [IN] * s_in + [OUT] * r_out)


def split_gadget() -> Gadget:
    return _SPLIT


def in_split_gadget() -> Gadget:
    return _IN_SPLIT


def out_split_gadget() -> Gadget:
    return _OUT_SPLIT


_SPLIT = Gadget("split", DIRECTED, 2, ((0, 1),), ((0, IN), (1, OUT)), pooled=True)
_IN_SPLIT = Gadget(
    "in-split", DIRECTED, 3, ((0, 1), (0, 2), (1, 0), (1, 2)),
    ((0, IN), (1, IN), (2, OUT)), pooled=True,
)
_OUT_SPLIT = Gadget(
    "out-split", DIRECTED, 3, ((0, 1), (0, 2), (1, 2), (2, 1)),
    ((0, IN), (1, OUT), (2, OUT)), pooled=True,
)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return build_graph(UNDIRECTED, 10, outer + inner + spokes)


# ---------------------------------------------------------------------------
# Replacement
# ---------------------------------------------------------------------------


def _ranks(keys: np.ndarray, order: np.ndarray) -> np.ndarray:
    """Position of each item within its ``keys`` group, in the given sort order."""
    sk = keys[order]
    first = np.zeros(len(sk), dtype=bool)
    if len(sk):
        first[0] = True
        first[1:] = sk[1:] != sk[:-1]
    starts = np.maximum.accumulate(np.where(first, np.arange(len(sk)), 0))
    ranks = np.empty(len(sk), dtype=np.int64)
    ranks[order] = np.arange(len(sk)) - starts
    return ranks


def replace_vertices(
    g: Graph, plan: Mapping[int, Block], stage: str = "replace"
) -> tuple[Graph, Provenance]:
    """Replace every vertex in ``plan`` by its block in a single pass.

    Survivors are renumbered in order, then the blocks are appended in
    ascending order of the vertex they replace. The result equals replacing
    the vertices one by one in ascending order.
    """
    n = g.n
    if not plan:
        return g, make_provenance(stage, n, np.arange(n))
    verts = np.array(sorted(plan), dtype=np.int64)
    if verts[0] < 0 or verts[-1] >= n:
        raise AttachmentError("replaced vertex out of range")
    blocks = [plan[int(v)] for v in verts]
    if any(b.directed != g.directed for b in blocks):
        raise AttachmentError("gadget orientation does not match the graph mode")

    keep = np.ones(n, dtype=bool)
    keep[verts] = False
    survivor_id = np.cumsum(keep) - 1
    n_surv = int(keep.sum())
    sizes = np.array([b.n for b in blocks], dtype=np.int64)
    offset = np.full(n, -1, dtype=np.int64)
    offset[verts] = n_surv + np.concatenate([[0], np.cumsum(sizes)[:-1]])
    n_out = n_surv + int(sizes.sum())

    # group vertices sharing one block object
    gid_of_block: dict[int, int] = {}
    uniq: list[Block] = []
    gids = np.empty(len(verts), dtype=np.int64)
    for i, b in enumerate(blocks):
        key = id(b)
        if key not in gid_of_block:
            gid_of_block[key] = len(uniq)
            uniq.append(b)
        gids[i] = gid_of_block[key]
    group = np.full(n, -1, dtype=np.int64)
    group[verts] = gids

    prof = degrees(g)
    for gi, b in enumerate(uniq):
        members = verts[gids == gi]
        if g.directed:
            ok = (prof.in_degree[members] == len(b.in_map)) & (prof.out_degree[members] == len(b.out_map))
        else:
            ok = prof.degree[members] == len(b.in_map)
        if not ok.all():
            v = int(members[np.flatnonzero(~ok)[0]])
            raise AttachmentError(f"vertex {v}: incident edges do not match the gadget attachments")

    e = g.edges
    src, dst = e[:, 0], e[:, 1]
    if g.directed:
        # rank of each arc among its tail's out-arcs and its head's in-arcs
        out_rank = _ranks(src, np.lexsort((dst, src)))
        in_rank = _ranks(dst, np.lexsort((src, dst)))
        new_src = _endpoint(src, out_rank, "out", keep, survivor_id, offset, group, uniq)
        new_dst = _endpoint(dst, in_rank, "in", keep, survivor_id, offset, group, uniq)
    else:
        half_v = np.concatenate([src, dst])
        half_nb = np.concatenate([dst, src])
        rank = _ranks(half_v, np.lexsort((half_nb, half_v)))
        m = len(e)
        new_src = _endpoint(src, rank[:m], "in", keep, survivor_id, offset, group, uniq)
        new_dst = _endpoint(dst, rank[m:], "in", keep, survivor_id, offset, group, uniq)
    parts = [np.stack([new_src, new_dst], axis=1)]
    origin = np.empty(n_out, dtype=np.int64)
    origin[:n_surv] = np.flatnonzero(keep)
    for gi, b in enumerate(uniq):
        members = verts[gids == gi]
        offs = offset[members]
        if len(b.edges):
            parts.append((offs[:, None, None] + b.edges[None, :, :]).reshape(-1, 2))
        idx = (offs[:, None] + np.arange(b.n)[None, :]).ravel()
        origin[idx] = np.repeat(members, b.n)
    new_edges = np.concatenate(parts) if parts else np.zeros((0, 2), np.int64)
    out = build_graph(g.mode, n_out, new_edges)
    return out, make_provenance(stage, n, origin)


def _endpoint(v, rank, side, keep, survivor_id, offset, group, uniq) -> np.ndarray:
    res = np.empty(len(v), dtype=np.int64)
    kept = keep[v]
    res[kept] = survivor_id[v[kept]]
    rep = ~kept
    if rep.any():
        rv, rr = v[rep], rank[rep]
        local = np.empty(len(rv), dtype=np.int64)
        gv = group[rv]
        for gi in np.unique(gv):
            b = uniq[int(gi)]
            table = b.in_map if side == "in" else b.out_map
            sel = gv == gi
            local[sel] = table[rr[sel]]
        res[rep] = offset[rv] + local
    return res


def block_for(g: Graph, v: int, gadget: Gadget) -> Block:
    prof = degrees(g)
    if g.directed:
        return gadget.block(int(prof.in_degree[v]), int(prof.out_degree[v]))
    return gadget.block(int(prof.degree[v]))


def replace_vertex(g: Graph, v: int, gadget: Gadget) -> tuple[Graph, Provenance]:
    """Replace one vertex by a gadget; see :func:`replace_vertices`."""
    if gadget.mode != g.mode:
        raise AttachmentError(f"{gadget.name} is {gadget.mode}, graph is {g.mode}")
    if not 0 <= v < g.n:
        raise AttachmentError(f"vertex {v} not in graph")
    return replace_vertices(g, {v: block_for(g, v, gadget)}, stage=f"replace:{gadget.name}")
