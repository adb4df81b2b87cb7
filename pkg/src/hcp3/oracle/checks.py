"""Empirical checks of gadget behaviour and of conversion equivalence."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from ..gadgets import IN, OUT, UND, Gadget
from ..graph_core import Graph, ProjectionError, Provenance, project_cycle
from . import sigdp
from .search import Outcome, SearchBudget, count_hc, find_hc, ham_path

TRUE, FALSE, INCONCLUSIVE = "true", "false", "inconclusive"


@dataclass
class Verdict:
    status: str
    checked: int = 0
    failures: list = field(default_factory=list)
    detail: str = ""

    def __bool__(self) -> bool:
        return self.status == TRUE


def admissible_pairs(gadget: Gadget) -> list[tuple[int, int]]:
    """Every unordered attachment pair (undirected) or every entry/exit pair."""
    if gadget.mode == "undirected":
        return list(combinations(gadget.attachment_vertices(UND), 2))
    return [(a, b) for a in gadget.attachment_vertices(IN) for b in gadget.attachment_vertices(OUT) if a != b]


def check_gadget_traversal(gadget: Gadget, budget: SearchBudget | None = None) -> Verdict:
    """True iff a Hamiltonian path of the gadget joins every admissible pair."""
    g = gadget.graph
    pairs = admissible_pairs(gadget)
    failures, unknown = [], []
    for a, b in pairs:
        res = ham_path(g, a, b, budget)
        if res.outcome is Outcome.BUDGET_EXCEEDED:
            unknown.append((a, b))
        elif not res.found:
            failures.append((a, b))
    if failures:
        return Verdict(FALSE, len(pairs), failures)
    if unknown:
        return Verdict(INCONCLUSIVE, len(pairs), unknown, "budget exceeded")
    return Verdict(TRUE, len(pairs))


class _OutOfBudget(Exception):
    pass


def find_path_cover(gadget: Gadget, min_paths: int = 2, budget: int = 10**7) -> list[list[int]] | None:
    """A family of at least ``min_paths`` vertex-disjoint paths covering the
    gadget, each running from an entry attachment to a different exit
    attachment, or None if there is none.

    Depth-first over (covered set, path end, paths so far) with a failure memo
    and a degree prune on the uncovered vertices.
    """
    g = gadget.graph
    n = g.n
    succ = [[int(x) for x in g.neighbors(v)] for v in range(n)]
    pred = [[int(x) for x in g.in_neighbors(v)] for v in range(n)] if g.directed else succ
    entries = gadget.entry_vertices()
    exits = set(gadget.exit_vertices())
    att = set(gadget.attachment_vertices())
    full = (1 << n) - 1
    failed: set = set()
    steps = [0]
    route: list[int] = []
    paths: list[list[int]] = []

    def viable(mask: int, end: int) -> bool:
        for x in range(n):
            if mask >> x & 1:
                continue
            ins = sum(1 for y in pred[x] if not mask >> y & 1 or y == end)
            if g.directed:
                outs = sum(1 for y in succ[x] if not mask >> y & 1)
                if x in att:
                    if (x in exits and ins < 1) or (x not in exits and outs < 1):
                        return False
                elif ins < 1 or outs < 1:
                    return False
            elif ins < (1 if x in att else 2):
                return False
        return True

    def rec(mask: int, end: int, m: int, long: bool) -> bool:
        steps[0] += 1
        if steps[0] > budget:
            raise _OutOfBudget
        key = (mask, end, m, long)
        if key in failed:
            return False
        if end < 0:
            if mask == full:
                return m >= min_paths
            for a in entries:
                if not mask >> a & 1:
                    route.append(a)
                    if rec(mask | 1 << a, a, m, False):
                        return True
                    route.pop()
        else:
            if long and end in exits:
                paths.append(list(route))
                saved = list(route)
                route.clear()
                if rec(mask, -1, min(m + 1, min_paths), False):
                    return True
                route.extend(saved)
                paths.pop()
            if viable(mask, end):
                for x in succ[end]:
                    if not mask >> x & 1:
                        route.append(x)
                        if rec(mask | 1 << x, x, m, True):
                            return True
                        route.pop()
        failed.add(key)
        return False

    try:
        ok = rec(0, -1, 0, False)
    except _OutOfBudget:
        raise TimeoutError("path-cover search exceeded its budget") from None
    return paths if ok else None


def check_gadget_blocking(gadget: Gadget, budget: int = 10**7) -> Verdict:
    """True iff no family of two or more disjoint attachment-to-attachment
    paths covers the gadget, i.e. a cycle cannot enter twice and still cover
    it."""
    try:
        cover = find_path_cover(gadget, 2, budget)
    except TimeoutError:
        return Verdict(INCONCLUSIVE, detail="budget exceeded")
    if cover is not None:
        return Verdict(FALSE, 1, [cover])
    return Verdict(TRUE, 1)


@dataclass
class Equivalence:
    status: str
    input_hamiltonian: bool | None = None
    output_hamiltonian: bool | None = None
    lift_valid: bool | None = None
    input_count: int | None = None
    output_count: int | None = None
    lifted: list[int] | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.status == "equivalent"


def provenance_hierarchy(provenance: Provenance, n: int) -> list[np.ndarray] | None:
    """Vertex groupings for the search: one origin map per stage when known,
    else the composed map."""
    if provenance.collapsed or provenance.output_n != n:
        return None
    levels = provenance.levels or (provenance.origin,)
    try:
        return sigdp.hierarchy_from_levels(levels, n)
    except ValueError:
        return None


def check_equivalence(
    g: Graph,
    converted: Graph,
    provenance: Provenance,
    budget: SearchBudget | None = None,
    count_factor: int | None = None,
) -> Equivalence:
    """Compare Hamiltonicity of ``g`` and ``converted``, lift any cycle found,
    and optionally check ``count(converted) == count_factor * count(g)``."""
    hier = provenance_hierarchy(provenance, converted.n)
    a = find_hc(g, budget)
    b = find_hc(converted, budget, hierarchy=hier)
    if not (a.complete and b.complete):
        return Equivalence(
            "inconclusive",
            a.found if a.complete else None,
            b.found if b.complete else None,
            detail="budget exceeded",
        )
    res = Equivalence("equivalent", a.found, b.found)
    if a.found != b.found:
        res.status = "inequivalent"
        res.detail = "Hamiltonicity differs"
        return res
    if b.found:
        try:
            res.lifted = project_cycle(provenance, b.sequence, g)
            res.lift_valid = True
        except ProjectionError as exc:
            res.lift_valid = False
            res.status = "inequivalent"
            res.detail = f"lift failed: {exc}"
            return res
    if count_factor is not None:
        ca, cb = count_hc(g, budget), count_hc(converted, budget, hierarchy=hier)
        if not (ca.complete and cb.complete):
            res.status = "inconclusive"
            res.detail = "count budget exceeded"
            return res
        res.input_count, res.output_count = ca.count, cb.count
        if cb.count != count_factor * ca.count:
            res.status = "inequivalent"
            res.detail = f"count {cb.count} != {count_factor} * {ca.count}"
    return res
