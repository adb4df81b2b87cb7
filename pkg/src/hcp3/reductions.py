"""Conversions between HCP variants and the end-to-end pipelines to cubic HCP.

Every conversion returns the new graph together with a :class:`Provenance`
mapping new vertices to the vertices they replace. Pipelines also return a
:class:`ConversionReport`.

Tie-breaking is by ascending vertex id throughout, which makes each
conversion a pure function of its input.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .gadgets import (
    Block,
    diamond,
    expanded_s_gate,
    petersen,
    replace_vertices,
    s_gate,
    sr_gate,
)
from .graph_core import (
    DIRECTED,
    UNDIRECTED,
    Graph,
    Provenance,
    build_graph,
    collapsed_provenance,
    compose_provenance,
    degrees,
    directed_view,
    identity_provenance,
    make_provenance,
)


class ConversionError(ValueError):
    pass


@dataclass
class ConversionReport:
    pipeline: str
    input_directed: bool
    input_vertices: int
    input_edges: int
    input_k: int
    output_vertices: int
    output_edges: int
    output_max_degree: int
    output_max_in: int
    output_max_out: int
    within_25k: bool
    within_100e: bool | None
    within_150e: bool | None
    collapsed: bool = False
    stages: list[tuple[str, int, int]] = field(default_factory=list)

    def to_text(self) -> str:
        lines = [
            f"pipeline: {self.pipeline}",
            f"input_mode: {DIRECTED if self.input_directed else UNDIRECTED}",
            f"input_vertices: {self.input_vertices}",
            f"input_edges: {self.input_edges}",
            f"input_k: {self.input_k}",
            f"output_vertices: {self.output_vertices}",
            f"output_edges: {self.output_edges}",
            f"output_max_degree: {self.output_max_degree}",
            f"output_max_in: {self.output_max_in}",
            f"output_max_out: {self.output_max_out}",
            f"within_25k: {_fmt(self.within_25k)}",
            f"within_100e: {_fmt(self.within_100e)}",
            f"within_150e: {_fmt(self.within_150e)}",
            f"collapsed_nonhamiltonian: {_fmt(self.collapsed)}",
        ]
        for i, (label, nv, ne) in enumerate(self.stages):
            lines.append(f"stage_{i}: {label} vertices={nv} edges={ne}")
        return "\n".join(lines) + "\n"


def _fmt(x) -> str:
    return "n/a" if x is None else str(x).lower()


def report(
    g_in: Graph,
    g_out: Graph,
    provenance: Provenance | None = None,
    pipeline: str = "identity",
    stages: list[tuple[str, int, int]] | None = None,
) -> ConversionReport:
    pin, pout = degrees(g_in), degrees(g_out)
    k = pin.k
    e = g_in.num_edges
    und = not g_in.directed
    return ConversionReport(
        pipeline=pipeline,
        input_directed=g_in.directed,
        input_vertices=g_in.n,
        input_edges=e,
        input_k=k,
        output_vertices=g_out.n,
        output_edges=g_out.num_edges,
        output_max_degree=pout.max_degree,
        output_max_in=pout.max_in,
        output_max_out=pout.max_out,
        within_25k=g_out.n <= 25 * k,
        within_100e=(g_out.n <= 100 * e) if und else None,
        within_150e=(g_out.num_edges <= 150 * e) if und else None,
        collapsed=bool(provenance is not None and provenance.collapsed),
        stages=list(stages or []),
    )


# ---------------------------------------------------------------------------
# Elementary conversions
# ---------------------------------------------------------------------------


def to_undirected(g: Graph) -> tuple[Graph, Provenance]:
    """Each vertex v becomes the path 3v - 3v+1 - 3v+2; arc (u, w) becomes the
    edge (3u+2, 3w). Hamiltonian cycles correspond one to one."""
    if not g.directed:
        raise ConversionError("to_undirected expects a directed graph")
    v = np.arange(g.n, dtype=np.int64)
    spine = np.concatenate([np.stack([3 * v, 3 * v + 1], 1), np.stack([3 * v + 1, 3 * v + 2], 1)])
    arcs = np.stack([3 * g.edges[:, 0] + 2, 3 * g.edges[:, 1]], 1)
    out = build_graph(UNDIRECTED, 3 * g.n, np.concatenate([spine, arcs]))
    return out, make_provenance("karp", g.n, np.repeat(v, 3))


def _is_degenerate(g: Graph) -> bool:
    prof = degrees(g)
    if g.directed:
        return g.n < 2 or bool((prof.in_degree == 0).any() or (prof.out_degree == 0).any())
    return g.n < 3 or bool((prof.degree <= 1).any())


def _collapse(g: Graph, stage: str, empty: bool = False) -> tuple[Graph, Provenance]:
    p = build_graph(UNDIRECTED, 0, []) if empty else petersen()
    return p, collapsed_provenance(f"{stage}:collapsed-nonhamiltonian", g.n, p.n)


def cubify(g: Graph) -> tuple[Graph, Provenance]:
    """Sub-cubic to cubic: degree-2 vertices become diamonds. A graph with a
    vertex of degree at most 1 (or fewer than three vertices) is replaced by
    the Petersen graph."""
    if g.directed:
        raise ConversionError("cubify expects an undirected graph")
    prof = degrees(g)
    if prof.max_degree > 3:
        raise ConversionError(f"cubify expects maximum degree 3, got {prof.max_degree}")
    if _is_degenerate(g):
        return _collapse(g, "cubify")
    block = diamond().block(2)
    plan = {int(v): block for v in np.flatnonzero(prof.degree == 2)}
    return replace_vertices(g, plan, stage="cubify")


def expand_high_degree(g: Graph) -> tuple[Graph, Provenance]:
    """Replace every vertex of degree s >= 4 by an expanded s-gate."""
    if g.directed:
        raise ConversionError("s-gates apply to undirected graphs")
    prof = degrees(g)
    blocks: dict[int, Block] = {}
    plan = {}
    for v in np.flatnonzero(prof.degree >= 4):
        s = int(prof.degree[v])
        if s not in blocks:
            blocks[s] = expanded_s_gate(s).block(s)
        plan[int(v)] = blocks[s]
    return replace_vertices(g, plan, stage="sgate")


def four_gates(g: Graph) -> tuple[Graph, Provenance]:
    """Replace every degree-4 vertex by a 4-gate (input must be sub-quartic)."""
    prof = degrees(g)
    if prof.max_degree > 4:
        raise ConversionError(f"expected maximum degree 4, got {prof.max_degree}")
    block = s_gate(4).block(4)
    plan = {int(v): block for v in np.flatnonzero(prof.degree == 4)}
    return replace_vertices(g, plan, stage="4gate")


# ---------------------------------------------------------------------------
# Splitting procedure
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def splitting_block(s_in: int, r_out: int, t: int) -> Block:
    """Subgraph replacing a vertex with in-degree ``s_in`` and out-degree ``r_out``.

    Start from a split, then in-split (FIFO) every vertex with in-degree above
    ``t``, then out-split every vertex with out-degree above ``t``. A vertex's
    incident edges are shared external edges first (by rank), then internal
    ones (by creation order); the first ceil(k/2) go to the first receiver.
    """
    if t < 3:
        raise ConversionError(f"splitting threshold must be at least 3, got {t}")
    ext_in: dict[int, list[int]] = {0: list(range(s_in)), 1: []}
    ext_out: dict[int, list[int]] = {0: [], 1: list(range(r_out))}
    inn: dict[int, set[int]] = {0: set(), 1: {0}}
    outn: dict[int, set[int]] = {0: {1}, 1: set()}
    alive = [0, 1]
    counter = [2]

    def fresh() -> int:
        x = counter[0]
        counter[0] += 1
        ext_in[x], ext_out[x], inn[x], outn[x] = [], [], set(), set()
        alive.append(x)
        return x

    def arc(a: int, b: int) -> None:
        outn[a].add(b)
        inn[b].add(a)

    def retire(x: int) -> None:
        alive.remove(x)
        for y in inn.pop(x):
            outn[y].discard(x)
        for z in outn.pop(x):
            inn[z].discard(x)
        del ext_in[x], ext_out[x]

    def indeg(x: int) -> int:
        return len(ext_in[x]) + len(inn[x])

    def outdeg(x: int) -> int:
        return len(ext_out[x]) + len(outn[x])

    def in_split(x: int) -> list[int]:
        items = [("e", r) for r in sorted(ext_in[x])] + [("i", y) for y in sorted(inn[x])]
        outs_e, outs_i = sorted(ext_out[x]), sorted(outn[x])
        retire(x)
        a, b, c = fresh(), fresh(), fresh()
        half = (len(items) + 1) // 2
        for i, (kind, val) in enumerate(items):
            dest = a if i < half else b
            if kind == "e":
                ext_in[dest].append(val)
            else:
                arc(val, dest)
        ext_out[c].extend(outs_e)
        for z in outs_i:
            arc(c, z)
        for p, q in ((a, b), (a, c), (b, a), (b, c)):
            arc(p, q)
        return [a, b, c]

    def out_split(x: int) -> list[int]:
        items = [("e", r) for r in sorted(ext_out[x])] + [("i", z) for z in sorted(outn[x])]
        ins_e, ins_i = sorted(ext_in[x]), sorted(inn[x])
        retire(x)
        a, b, c = fresh(), fresh(), fresh()
        half = (len(items) + 1) // 2
        for i, (kind, val) in enumerate(items):
            dest = b if i < half else c
            if kind == "e":
                ext_out[dest].append(val)
            else:
                arc(dest, val)
        ext_in[a].extend(ins_e)
        for y in ins_i:
            arc(y, a)
        for p, q in ((a, b), (a, c), (b, c), (c, b)):
            arc(p, q)
        return [a, b, c]

    for degree_of, splitter in ((indeg, in_split), (outdeg, out_split)):
        queue = deque(x for x in alive if degree_of(x) > t)
        while queue:
            x = queue.popleft()
            if x not in ext_in or degree_of(x) <= t:
                continue
            queue.extend(y for y in splitter(x) if degree_of(y) > t)

    local = {x: i for i, x in enumerate(alive)}
    in_map = np.empty(s_in, dtype=np.int64)
    out_map = np.empty(r_out, dtype=np.int64)
    for x in alive:
        for r in ext_in[x]:
            in_map[r] = local[x]
        for r in ext_out[x]:
            out_map[r] = local[x]
    edges = sorted((local[a], local[b]) for a in alive for b in outn[a])
    return Block(len(alive), np.array(edges, dtype=np.int64).reshape(-1, 2), in_map, out_map, True)


def split_vertex(g: Graph, v: int, t: int) -> tuple[Graph, Provenance]:
    """Apply the splitting procedure to one vertex of a digraph."""
    if not g.directed:
        raise ConversionError("split_vertex expects a directed graph")
    if t < 3:
        raise ConversionError(f"threshold must be at least 3, got {t}")
    if not 0 <= v < g.n:
        raise ConversionError(f"vertex {v} not in graph")
    prof = degrees(g)
    block = splitting_block(int(prof.in_degree[v]), int(prof.out_degree[v]), t)
    return replace_vertices(g, {v: block}, stage=f"split:{t}")


def _bound(g: Graph, t: int) -> tuple[Graph, Provenance]:
    prof = degrees(g)
    plan = {}
    for v in np.flatnonzero((prof.in_degree > t) | (prof.out_degree > t)):
        plan[int(v)] = splitting_block(int(prof.in_degree[v]), int(prof.out_degree[v]), t)
    return replace_vertices(g, plan, stage=f"bound:{t}")


def bound_degree(g: Graph, t: int) -> tuple[Graph, Provenance, ConversionReport]:
    """Split every vertex whose in- or out-degree exceeds ``t``."""
    if not g.directed:
        raise ConversionError("bound_degree expects a directed graph")
    if t < 3:
        raise ConversionError(f"threshold must be at least 3, got {t}")
    out, prov = _bound(g, t)
    rep = report(g, out, prov, f"bound:{t}", [(prov.stage, out.n, out.num_edges)])
    return out, prov, rep


# ---------------------------------------------------------------------------
# Pipelines
# ---------------------------------------------------------------------------


class _Chain:
    """Accumulates stage provenance and per-stage sizes."""

    def __init__(self, g: Graph):
        self.g = g
        self.prov = identity_provenance(g.n, "input")
        self.stages: list[tuple[str, int, int]] = []

    def apply(self, result: tuple[Graph, Provenance]) -> None:
        g, p = result
        self.prov = compose_provenance(p, self.prov)
        self.g = g
        self.stages.append((p.stage, g.n, g.num_edges))


def _finish(name: str, g_in: Graph, chain: _Chain) -> tuple[Graph, Provenance, ConversionReport]:
    prov = chain.prov
    prov = Provenance(name, prov.input_n, prov.origin, prov.collapsed, prov.levels)
    return chain.g, prov, report(g_in, chain.g, prov, name, chain.stages)


def sgate_pipeline(g: Graph) -> tuple[Graph, Provenance, ConversionReport]:
    """Undirected HCP to cubic HCP with expanded s-gates and diamonds.

    A degree-s vertex (s >= 4) contributes s^2 + 6s - 26 output vertices.
    """
    if g.directed:
        raise ConversionError("sgate pipeline expects an undirected graph")
    chain = _Chain(g)
    if _is_degenerate(g):
        chain.apply(_collapse(g, "sgate"))
    else:
        chain.apply(expand_high_degree(g))
        chain.apply(cubify(chain.g))
    return _finish("sgate", g, chain)


def _directed_start(g: Graph, name: str) -> tuple[Graph | None, _Chain]:
    dv = directed_view(g)
    chain = _Chain(g)
    # the directed view of an undirected edge is a 2-cycle, so the undirected
    # rule (N >= 3, no leaves) must be checked before taking the view
    if _is_degenerate(g) or _is_degenerate(dv):
        # with no edges k = 0, and only the empty graph meets the 25k bound
        chain.apply(_collapse(g, name, empty=dv.num_edges == 0))
        return None, chain
    if not g.directed:
        chain.apply((dv, identity_provenance(g.n, "directed-view")))
    return dv, chain


def quick_3hcp(g: Graph) -> tuple[Graph, Provenance, ConversionReport]:
    """Split to in/out-degree 3, Karp conversion, 4-gates, diamonds."""
    dv, chain = _directed_start(g, "quick")
    if dv is not None:
        chain.apply(_bound(chain.g, 3))
        chain.apply(to_undirected(chain.g))
        chain.apply(four_gates(chain.g))
        chain.apply(cubify(chain.g))
    return _finish("quick", g, chain)


def sr_gates(g: Graph) -> tuple[Graph, Provenance]:
    """Replace every vertex with in-degree + out-degree >= 4 by an (s,r)-gate."""
    if not g.directed:
        raise ConversionError("(s,r)-gates apply to directed graphs")
    prof = degrees(g)
    plan = {}
    cache: dict[tuple[int, int], Block] = {}
    for v in np.flatnonzero(prof.in_degree + prof.out_degree >= 4):
        key = (int(prof.in_degree[v]), int(prof.out_degree[v]))
        if key not in cache:
            cache[key] = sr_gate(*key).block(*key)
        plan[int(v)] = cache[key]
    return replace_vertices(g, plan, stage="srgate")


def hcp_to_3hcp(g: Graph, d: int = 4) -> tuple[Graph, Provenance, ConversionReport]:
    """Split to degree ``d``, (s,r)-gates, Karp conversion, 4-gates, diamonds."""
    if d < 4:
        raise ConversionError(f"d must be at least 4, got {d}")
    dv, chain = _directed_start(g, f"3hcp:{d}")
    if dv is not None:
        chain.apply(_bound(chain.g, d))
        chain.apply(sr_gates(chain.g))
        chain.apply(to_undirected(chain.g))
        chain.apply(four_gates(chain.g))
        chain.apply(cubify(chain.g))
    return _finish(f"3hcp:{d}", g, chain)


def karp(g: Graph) -> tuple[Graph, Provenance, ConversionReport]:
    out, prov = to_undirected(g)
    return out, prov, report(g, out, prov, "karp", [(prov.stage, out.n, out.num_edges)])


def cubify_pipeline(g: Graph) -> tuple[Graph, Provenance, ConversionReport]:
    out, prov = cubify(g)
    return out, prov, report(g, out, prov, "cubify", [(prov.stage, out.n, out.num_edges)])


def run_pipeline(name: str, g: Graph) -> tuple[Graph, Provenance, ConversionReport]:
    """Dispatch on a pipeline name: karp, cubify, sgate, quick, bound:D, 3hcp:D."""
    head, _, arg = name.partition(":")
    if head in ("bound", "3hcp"):
        try:
            d = int(arg)
        except ValueError:
            raise ConversionError(f"pipeline {name!r} needs an integer argument, e.g. {head}:4") from None
        return bound_degree(g, d) if head == "bound" else hcp_to_3hcp(g, d)
    if arg:
        raise ConversionError(f"pipeline {head!r} takes no argument")
    table = {"karp": karp, "cubify": cubify_pipeline, "sgate": sgate_pipeline, "quick": quick_3hcp}
    if head not in table:
        raise ConversionError(f"unknown pipeline {name!r}")
    return table[head](g)


def sgate_vertex_count(degree: int) -> int:
    """Output vertices contributed by one vertex in the s-gate pipeline."""
    if degree == 2:
        return 4
    if degree == 3:
        return 1
    if degree >= 4:
        return degree * degree + 6 * degree - 26
    raise ValueError("degree must be at least 2")
