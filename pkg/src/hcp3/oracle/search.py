"""Exact Hamiltonian cycle and path search.

The kernel decides edges rather than extending one path. Each edge is free,
taken or deleted, and after every decision a propagation pass applies:

* a vertex with only as many usable edges as it needs takes all of them;
* a vertex that has all the edges it needs deletes its other edges;
* an edge joining the two ends of a fragment (a maximal path of taken
  edges) is deleted unless it would complete the whole cycle.

Gadget-rich graphs collapse quickly under these rules, because most gadget
vertices have degree three. Branching picks the end of the fragment that
was extended last and splits on which of its free edges is the first one
taken, so no cycle is reached twice. Paths reduce to cycles through one
extra vertex joined to both endpoints.

Converted graphs are built from thousands of gadget copies. When the caller
knows which gadget each vertex came from, undirected searches instead use
the grouped counting in ``sigdp``, which handles each distinct gadget once.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass, field

import numpy as np

from ..graph_core import Graph, build_graph, is_hamiltonian_cycle, is_hamiltonian_path
from . import sigdp

if os.environ.get("HCP3_PURE_PYTHON") == "1":
    from . import _pykernel as _kernel_mod
else:
    try:
        from . import _kernel as _kernel_mod  # type: ignore[attr-defined]
    except ImportError:  # extension not built
        from . import _pykernel as _kernel_mod

KERNEL = "cython" if _kernel_mod.__name__.endswith("._kernel") else "python"

DEFAULT_BUDGET = 10**8


class Outcome(enum.Enum):
    FOUND = "found"
    EXHAUSTED_NONE = "exhausted-none"
    BUDGET_EXCEEDED = "budget-exceeded"


@dataclass(frozen=True)
class SearchBudget:
    """Work limit for one search: branches for the edge kernel, or state
    expansions for the grouped counter."""

    limit: int = DEFAULT_BUDGET

    def __post_init__(self):
        if self.limit <= 0:
            raise ValueError("budget must be positive")


@dataclass
class SearchResult:
    outcome: Outcome
    sequence: list[int] | None = None
    nodes: int = 0

    @property
    def found(self) -> bool:
        return self.outcome is Outcome.FOUND

    @property
    def complete(self) -> bool:
        return self.outcome is not Outcome.BUDGET_EXCEEDED


@dataclass
class CountResult:
    count: int
    complete: bool
    nodes: int = 0
    convention: str = "canonical"
    raw: int = field(default=0, repr=False)


def _run(g: Graph, count: bool, budget: SearchBudget | None, kernel=None, hierarchy=None):
    budget = budget or SearchBudget()
    ea = np.ascontiguousarray(g.edges[:, 0], dtype=np.int64)
    eb = np.ascontiguousarray(g.edges[:, 1], dtype=np.int64)
    if hierarchy is not None and not g.directed and kernel is None:
        status, c, edges, work = sigdp.search(g.n, ea, eb, hierarchy, count, budget.limit)
        return int(status), int(c), _sequence(g, edges), int(work)
    kern = kernel or _kernel_mod
    status, c, seq, nodes = kern.search(g.n, ea, eb, g.directed, count, budget.limit)
    return int(status), int(c), [int(v) for v in seq], int(nodes)


def _sequence(g: Graph, edges) -> list[int]:
    """Vertex order of the undirected cycle made of the given edge ids."""
    if not len(edges):
        return []
    nbr = [[] for _ in range(g.n)]
    for e in edges:
        a, b = int(g.edges[e, 0]), int(g.edges[e, 1])
        nbr[a].append(b)
        nbr[b].append(a)
    seq, prev = [0], -1
    while len(seq) < g.n:
        cur = seq[-1]
        nxt = nbr[cur][0] if nbr[cur][0] != prev else nbr[cur][1]
        prev = cur
        seq.append(nxt)
    return seq


def _with_hub(g: Graph, u: int, w: int) -> Graph:
    """Add vertex ``z = n`` with arcs w -> z -> u (edges z-u, z-w if undirected).
    Hamiltonian cycles of the result are the u-w Hamiltonian paths of g."""
    z = g.n
    extra = np.array([[w, z], [z, u]] if g.directed else [[u, z], [w, z]], dtype=np.int64)
    return build_graph(g.mode, g.n + 1, np.concatenate([g.edges.reshape(-1, 2).astype(np.int64), extra]))


def _trivially_none(g: Graph) -> bool:
    # a 1-vertex graph has no cycle; undirected cycles need 3 vertices
    return g.n < 2 or (not g.directed and g.n < 3)


def find_hc(g: Graph, budget: SearchBudget | None = None, kernel=None, hierarchy=None) -> SearchResult:
    """Find one Hamiltonian cycle, certify there is none, or run out of budget.

    ``hierarchy`` is an optional list of parent maps grouping the vertices
    (vertex to group, group to supergroup, ...). It only affects speed.
    """
    if _trivially_none(g):
        return SearchResult(Outcome.EXHAUSTED_NONE)
    status, _, seq, nodes = _run(g, False, budget, kernel, hierarchy)
    if status != 0:
        return SearchResult(Outcome.BUDGET_EXCEEDED, None, nodes)
    if not seq:
        return SearchResult(Outcome.EXHAUSTED_NONE, None, nodes)
    assert is_hamiltonian_cycle(g, seq), "kernel returned an invalid cycle"
    return SearchResult(Outcome.FOUND, seq, nodes)


def count_hc(
    g: Graph,
    budget: SearchBudget | None = None,
    convention: str = "canonical",
    kernel=None,
    hierarchy=None,
) -> CountResult:
    """Count Hamiltonian cycles.

    ``canonical``: directed cycles up to rotation, undirected cycles up to
    rotation and reflection. ``rotation``: vertex sequences up to rotation
    only, so each undirected cycle counts twice.
    """
    if convention not in ("canonical", "rotation"):
        raise ValueError(f"unknown convention {convention!r}")
    if _trivially_none(g):
        return CountResult(0, True, 0, convention)
    status, raw, _, nodes = _run(g, True, budget, kernel, hierarchy)
    c = 2 * raw if (convention == "rotation" and not g.directed) else raw
    return CountResult(c, status == 0, nodes, convention, raw)


def _check_ends(g: Graph, u: int, w: int) -> None:
    if u == w:
        raise ValueError("path endpoints must differ")
    if not (0 <= u < g.n and 0 <= w < g.n):
        raise ValueError("endpoint not in graph")


def ham_path(
    g: Graph, u: int, w: int, budget: SearchBudget | None = None, kernel=None
) -> SearchResult:
    """Hamiltonian path from ``u`` to ``w`` (following arc directions)."""
    _check_ends(g, u, w)
    h = _with_hub(g, u, w)
    status, _, seq, nodes = _run(h, False, budget, kernel)
    if status != 0:
        return SearchResult(Outcome.BUDGET_EXCEEDED, None, nodes)
    if not seq:
        return SearchResult(Outcome.EXHAUSTED_NONE, None, nodes)
    i = seq.index(g.n)
    path = seq[i + 1:] + seq[:i]
    if path[0] != u:
        path.reverse()
    assert is_hamiltonian_path(g, path) and path[0] == u and path[-1] == w
    return SearchResult(Outcome.FOUND, path, nodes)


def count_ham_paths(g: Graph, u: int, w: int, budget: SearchBudget | None = None, kernel=None) -> CountResult:
    """Number of Hamiltonian paths from ``u`` to ``w``."""
    _check_ends(g, u, w)
    status, raw, _, nodes = _run(_with_hub(g, u, w), True, budget, kernel)
    return CountResult(raw, status == 0, nodes, "paths", raw)
