"""Exact Hamiltonian cycle counting over a hierarchy of vertex groups.

A converted graph is a tree of substitutions: each output vertex belongs to a
gadget, each gadget stands for a vertex of the previous stage, and so on up
to the input graph. The solver works bottom-up along that tree.

The *signature* of a group X is every way a Hamiltonian cycle can meet it:
which edges of X's boundary the cycle uses, and how the used edges pair up
through X. Each way comes with the number of path systems inside X that
realise it. For a vertex it is every pair of incident edges, once each. A
group's signature follows from its children's by a frontier dynamic
programme over the children; the frontier is the set of boundary edges
between processed and unprocessed children. At the root the cycle must
close exactly once, after the last child.

Groups whose wiring is identical share one computation, which is what makes
gadget-built graphs with thousands of copies of a few gadgets cheap. The
hierarchy only changes the running time: any partition yields the same
count, and with no hierarchy every vertex is a child of the root.
"""

from __future__ import annotations

import numpy as np

COMPLETE, BUDGET = 0, 2


class _OutOfBudget(Exception):
    pass


# Signatures depend only on a group's canonical description, so they are
# shared by every search in the process. Entries are never invalidated.
_SIGS: list[list[tuple[tuple, int]]] = []
_SYM: list[bool] = []  # signature unchanged by any reordering of its slots
_SIG_IDS: dict = {}  # signature content -> id
_CACHE: dict = {}
_TRACES: dict = {}
_RECON: dict = {}
_CACHE_LIMIT = 200_000


def clear_cache() -> None:
    _SIGS.clear()
    _SYM.clear()
    _SIG_IDS.clear()
    _CACHE.clear()
    _TRACES.clear()
    _RECON.clear()


def hierarchy_from_levels(levels, n: int) -> list[np.ndarray]:
    """Parent maps from the vertices upward, given stage origin maps in
    pipeline order. Identity stages are dropped."""
    parents = []
    size = n
    for lv in reversed(levels):
        lv = np.asarray(lv, dtype=np.int64)
        if len(lv) != size:
            raise ValueError(f"stage map has {len(lv)} entries, expected {size}")
        nxt = int(lv.max()) + 1 if len(lv) else 0
        if not (nxt == size and np.array_equal(lv, np.arange(size))):
            parents.append(lv)
        size = nxt
    return parents


class _Solver:
    def __init__(self, n, ea, eb, parents, budget):
        self.n = n
        self.ea = ea
        self.eb = eb
        self.budget = budget
        self.work = 0
        if len(_CACHE) > _CACHE_LIMIT:
            clear_cache()
        # signature table: id -> list of (pattern, count); cache: key -> id
        self.sigs = _SIGS
        self.cache = _CACHE
        self.slot_perm: dict = {}
        self._build(parents)

    # -- hierarchy -----------------------------------------------------------

    def _build(self, parents):
        n, ea, eb = self.n, self.ea, self.eb
        # ancestor of every vertex at each level
        anc = [np.arange(n, dtype=np.int64)]
        for p in parents:
            # renumber so that every group at a level is non-empty
            _, inv = np.unique(p[anc[-1]], return_inverse=True)
            anc.append(inv.astype(np.int64))
        # merge single-node top levels into the root
        while len(anc) > 1 and int(anc[-1].max()) == 0:
            anc.pop()
        self.counts = [int(a.max()) + 1 for a in anc]
        self.anc = [a.tolist() for a in anc]
        self.levels = len(anc)  # level L-1 nodes are the root's children
        # leaf slot order is arbitrary: a vertex's signature is symmetric
        bnd = [[] for _ in range(n)]
        for e in range(len(ea)):
            bnd[ea[e]].append(e)
            bnd[eb[e]].append(e)
        self.bnd0 = bnd

    def _leaf_sig(self, d: int) -> int:
        key = ("leaf", d)
        sid = self.cache.get(key)
        if sid is None:
            pats = []
            for i in range(d):
                for j in range(i + 1, d):
                    p = [-1] * d
                    p[i], p[j] = j, i
                    pats.append((tuple(p), 1))
            sid = _intern(pats)
            self.cache[key] = sid
        return sid

    def _group(self, level, children, bnd, pos, sig_of):
        """Local description of a group at ``level + 1``: its children in
        canonical order, their signature ids, slot wiring (``(child, slot)``
        or ``(-1, external index)``) and the group's boundary edges.

        Children are ordered by colour refinement on the wiring, trying each
        member of a tied colour class and keeping the smallest description,
        so copies of one gadget usually share a cache entry. The choice only
        affects speed."""
        anc = self.anc[level]
        local = {c: i for i, c in enumerate(children)}
        k = len(children)
        # partner of every slot: (child, slot) or (-1, -1) for the outside
        rows = []
        for c in children:
            row = []
            for e in bnd[c]:
                a, b = self.ea[e], self.eb[e]
                other = anc[b] if anc[a] == c else anc[a]
                i2 = local.get(other)
                row.append((-1, -1) if i2 is None else (i2, pos[(int(other), e)]))
            rows.append(row)
        sids0 = [sig_of[c] for c in children]
        # symmetric children (single vertices, for one) have no fixed slot order
        sym = [_SYM[s] for s in sids0]

        def describe(color):
            order = sorted(range(k), key=color.__getitem__)
            rank = [0] * k
            for r, i in enumerate(order):
                rank[i] = r
            # a symmetric child lists its slots by the rank of the child reached
            perm = [
                sorted(range(len(rows[i])), key=lambda j, i=i: (k if rows[i][j][0] < 0 else rank[rows[i][j][0]], j))
                if sym[i]
                else list(range(len(rows[i])))
                for i in range(k)
            ]
            slot = [{j: t for t, j in enumerate(p)} for p in perm]
            wiring = []
            ext = []
            n_ext = 0
            for i in order:
                row = []
                for j in perm[i]:
                    i2, j2 = rows[i][j]
                    if i2 < 0:
                        row.append((-1, n_ext))
                        ext.append((i, j))
                        n_ext += 1
                    else:
                        row.append((rank[i2], slot[i2][j2]))
                wiring.append(tuple(row))
            return (tuple(sids0[i] for i in order), tuple(wiring)), order, perm, ext

        best = None
        budget = [32]
        stack = [_refine(sids0, rows, sym)]
        while stack:
            color = stack.pop()
            classes = set(color)
            if len(classes) == k:
                d = describe(color)
                if best is None or d[0] < best[0]:
                    best = d
                continue
            tied = min(x for x in classes if color.count(x) > 1)
            members = [i for i, x in enumerate(color) if x == tied]
            if budget[0] <= 0:
                members = members[:1]
            budget[0] -= len(members) - 1
            for i in reversed(members):
                stack.append(_refine([2 * x + (x == tied and j != i) for j, x in enumerate(color)], rows, sym))
        (sids, wiring), order, perm, ext_slots = best
        for i in range(k):
            if sym[i] and perm[i] != sorted(perm[i]):
                c = children[i]
                bnd[c] = [bnd[c][j] for j in perm[i]]
                if level > 0:
                    # the child's own records still use its original slot order
                    self.slot_perm[(level, c)] = perm[i]
        ext = [bnd[children[i]][perm[i].index(j)] for i, j in ext_slots]
        return [children[i] for i in order], sids, wiring, ext

    def signatures(self):
        """Signature ids of the root's children, plus per-level records
        needed to rebuild a cycle."""
        n = self.n
        sig_of = [self._leaf_sig(len(self.bnd0[v])) for v in range(n)]
        bnd = self.bnd0
        self.records = []  # per level >= 1: (children lists, group keys, bnd)
        for level in range(self.levels - 1):
            pos = {}
            for c, lst in enumerate(bnd):
                for j, e in enumerate(lst):
                    pos[(c, e)] = j
            parent = self.anc[level + 1]
            # children of each group, in id order
            nxt = self.counts[level + 1]
            kids: list[list[int]] = [[] for _ in range(nxt)]
            up = [0] * self.counts[level]
            for v in range(n):
                up[self.anc[level][v]] = parent[v]
            for c in range(self.counts[level]):
                kids[up[c]].append(c)
            new_bnd = []
            new_sig = []
            keys = []
            for P in range(nxt):
                kids[P], sids, wiring, ext = self._group(level, kids[P], bnd, pos, sig_of)
                key = (sids, wiring)
                sid = self.cache.get(key)
                if sid is None:
                    sid = _intern(self._combine(sids, wiring, len(ext), root=False).items())
                    self.cache[key] = sid
                new_bnd.append(ext)
                new_sig.append(sid)
                keys.append(key)
            self.records.append((kids, keys, bnd))
            bnd = new_bnd
            sig_of = new_sig
        top = list(range(self.counts[self.levels - 1]))
        pos = {}
        for c, lst in enumerate(bnd):
            for j, e in enumerate(lst):
                pos[(c, e)] = j
        top, sids, wiring, ext = self._group(self.levels - 1, top, bnd, pos, sig_of)
        assert not ext
        self.root = (top, (sids, wiring), bnd)
        return sids, wiring

    # -- the frontier programme ----------------------------------------------

    def _order(self, wiring):
        """Child order for the frontier programme: greedy from several
        starts, keeping the order whose widest frontier is smallest. Ties
        go to the child touching the oldest part of the frontier."""
        k = len(wiring)
        nbrs = [[i2 for i2, _ in row if i2 >= 0] for row in wiring]
        slots = [len(row) for row in wiring]
        starts = max(1, min(k, 4_000_000 // max(1, k * k)))
        best = None
        for start in range(starts):
            done = [False] * k
            touch = [0] * k
            age = [k] * k
            order = [start]
            done[start] = True
            width = slots[start]
            peak, area = width, width
            for i2 in nbrs[start]:
                touch[i2] += 1
                age[i2] = 0
            for step in range(1, k):
                pick, ps = -1, None
                for i in range(k):
                    if done[i]:
                        continue
                    # frontier change if i goes next: its open slots minus the ones it closes
                    sc = (slots[i] - 2 * touch[i], -touch[i], age[i], i)
                    if ps is None or sc < ps:
                        pick, ps = i, sc
                done[pick] = True
                order.append(pick)
                width += ps[0]
                peak = max(peak, width)
                area += width
                for i2 in nbrs[pick]:
                    touch[i2] += 1
                    if age[i2] > step:
                        age[i2] = step
            if best is None or (peak, area) < best[0]:
                best = ((peak, area), order)
        return best[1] if best else []

    def _combine(self, sids, wiring, n_ext, root, trace=False):
        """Frontier programme over the children of one group.

        Non-root: returns ``{pattern over external slots: count}``. Root:
        returns the number of Hamiltonian cycles. With ``trace`` it also
        returns per-step back-pointers.
        """
        k = len(sids)
        order = self._order(wiring)
        # label every edge slot: internal edges share a label, externals get their own
        label = {}
        next_label = 0
        slot_label = []
        for i in range(k):
            row = []
            for j, (i2, j2) in enumerate(wiring[i]):
                if i2 < 0:
                    lab = ("x", j2)
                else:
                    lab = (i, j) if (i, j) < (i2, j2) else (i2, j2)
                if lab not in label:
                    label[lab] = next_label
                    next_label += 1
                row.append(label[lab])
            slot_label.append(row)
        ext_label = {label[("x", x)]: x for x in range(n_ext)}
        open_: list[int] = []
        states: dict[tuple, int] = {(): 1}
        back = []
        total = 0
        finals = []
        for step, i in enumerate(order):
            last = step == k - 1
            labs = slot_label[i]
            where = {lab: o for o, lab in enumerate(open_)}
            closed = [(j, where[lab]) for j, lab in enumerate(labs) if lab in where]
            closed_old = {o for _, o in closed}
            new_slots = [j for j, lab in enumerate(labs) if lab not in where]
            keep = [o for o in range(len(open_)) if o not in closed_old]
            new_open = [open_[o] for o in keep] + [labs[j] for j in new_slots]
            L = len(open_)
            d = len(labs)
            # point ids: old open 0..L-1, slots L..L+d-1
            glue = {}
            for j, o in closed:
                glue[o] = L + j
                glue[L + j] = o
            newpos = {}
            for t, o in enumerate(keep):
                newpos[o] = t
            for t, j in enumerate(new_slots):
                newpos[L + j] = len(keep) + t
            # patterns grouped by their use of the closed slots
            by_mask: dict[tuple, list] = {}
            for pi, (pat, cnt) in enumerate(self.sigs[sids[i]]):
                mask = tuple(pat[j] >= 0 for j, _ in closed)
                by_mask.setdefault(mask, []).append((pi, pat, cnt))
            ends = list(newpos.items())
            nxt: dict[tuple, int] = {}
            bp = {} if trace else None
            for s, c in states.items():
                mask = tuple(s[o] >= 0 for _, o in closed)
                pats = by_mask.get(mask)
                if not pats:
                    continue
                self.work += len(pats)
                if self.work > self.budget:
                    raise _OutOfBudget
                for pi, pat, cnt in pats:
                    out = [-1] * len(new_open)
                    visited = 0
                    for x, px in ends:
                        if out[px] != -1:
                            continue
                        y = s[x] if x < L else (L + pat[x - L] if pat[x - L] >= 0 else -1)
                        if y < 0:
                            continue
                        # follow the path through glued points to the other open end
                        while y in glue:
                            visited += 1
                            z = glue[y]
                            y = s[z] if z < L else L + pat[z - L]
                        py = newpos[y]
                        out[px] = py
                        out[py] = px
                    # used glued points not on an open path lie on closed cycles
                    used_glued = sum(1 for _, o in closed if s[o] >= 0)
                    if visited != used_glued:
                        if not (root and last and all(v < 0 for v in out)):
                            continue
                        if _cycles(s, pat, closed, L) != 1:
                            continue
                        total += c * cnt
                        if trace:
                            finals.append((s, pi))
                        continue
                    if last and root:
                        continue
                    key = tuple(out)
                    nxt[key] = nxt.get(key, 0) + c * cnt
                    if trace and key not in bp:
                        bp[key] = (s, pi)
            states = nxt
            open_ = new_open
            if trace:
                back.append(bp)
            if not states and not (root and last):
                break
        if root:
            if trace:
                return total, order, back, finals
            return total
        # map the frontier (externals only, in some order) onto external slot order
        result: dict[tuple, int] = {}
        if not states:
            return (result, order, back, None) if trace else result
        perm = [ext_label[lab] for lab in open_]
        for s, c in states.items():
            pat = [-1] * n_ext
            for o, m in enumerate(s):
                if m >= 0:
                    pat[perm[o]] = perm[m]
            key = tuple(pat)
            result[key] = result.get(key, 0) + c
        if trace:
            return result, order, back, perm
        return result

    # -- witness -------------------------------------------------------------

    def _children_patterns(self, sids, wiring, n_ext, target, root):
        """Patterns of each child (local index order) realising ``target``
        (a pattern over the group's external slots, or ``None`` at the root)."""
        memo_key = (sids, wiring, target)
        hit = _RECON.get(memo_key)
        if hit is not None:
            return hit
        if root:
            total, order, back, finals = self._combine(sids, wiring, 0, True, trace=True)
            if not finals:
                return None
            s, pi = finals[0]
            steps = list(range(len(order) - 1))
            choice = {order[-1]: pi}
        else:
            tr = _TRACES.get((sids, wiring))
            if tr is None:
                tr = self._combine(sids, wiring, n_ext, False, trace=True)
                _TRACES[(sids, wiring)] = tr
            result, order, back, perm = tr
            inv = {x: o for o, x in enumerate(perm)}
            s = [-1] * n_ext
            for x, m in enumerate(target):
                if m >= 0:
                    s[inv[x]] = inv[m]
            s = tuple(s)
            choice = {}
            steps = list(range(len(order)))
        for step in reversed(steps):
            prev, pi = back[step][s]
            choice[order[step]] = pi
            s = prev
        pats = [self.sigs[sids[i]][choice[i]][0] for i in range(len(sids))]
        if not root:
            _RECON[memo_key] = pats
        return pats

    def cycle_edges(self) -> list[int]:
        top, (sids, wiring), bnd = self.root
        pats = self._children_patterns(sids, wiring, 0, None, True)
        if pats is None:
            return []
        # walk down: (level, node, pattern)
        work = [(self.levels - 1, c, pats[i]) for i, c in enumerate(top)]
        used: list[int] = []
        while work:
            level, node, pat = work.pop()
            if level == 0:
                b = self.bnd0[node]
                used.extend(b[j] for j in range(len(pat)) if pat[j] > j)
                used.extend(b[pat[j]] for j in range(len(pat)) if pat[j] > j)
                continue
            kids, keys, _ = self.records[level - 1]
            sids_c, wiring_c = keys[node]
            perm = self.slot_perm.get((level, node))
            if perm is not None:
                orig = [-1] * len(pat)
                for t, m in enumerate(pat):
                    if m >= 0:
                        orig[perm[t]] = perm[m]
                pat = tuple(orig)
            n_ext = len(pat)
            cp = self._children_patterns(sids_c, wiring_c, n_ext, pat, False)
            for i, c in enumerate(kids[node]):
                work.append((level - 1, c, cp[i]))
        return sorted(set(used))


def _refine(color, rows, sym):
    """Stable colouring of children: a child's colour is refined by the
    colours of the children its slots lead to, slot by slot, or as a
    multiset for symmetric children. Slot numbers of symmetric partners
    are not canonical and are left out."""
    classes = len(set(color))
    while True:
        sig = []
        for i, row in enumerate(rows):
            nb = [(-1, -1) if i2 < 0 else (color[i2], -1 if sym[i2] else j2) for i2, j2 in row]
            sig.append((color[i], tuple(sorted(nb) if sym[i] else nb)))
        ranks = {s: r for r, s in enumerate(sorted(set(sig)))}
        color = [ranks[s] for s in sig]
        if len(ranks) == classes:
            return color
        classes = len(ranks)


def _intern(items) -> int:
    """Id of a signature given as ``(pattern, count)`` pairs."""
    pats = sorted(items)
    key = tuple(pats)
    sid = _SIG_IDS.get(key)
    if sid is None:
        sid = len(_SIGS)
        _SIGS.append(pats)
        _SYM.append(_symmetric(pats))
        _SIG_IDS[key] = sid
    return sid


def _symmetric(pats) -> bool:
    if not pats:
        return True
    d = len(pats[0][0])
    if d < 2:
        return True
    have = set(pats)
    # a transposition and a full rotation generate every permutation
    for sigma in ([1, 0] + list(range(2, d)), list(range(1, d)) + [0]):
        for p, c in pats:
            q = [-1] * d
            for i, m in enumerate(p):
                if m >= 0:
                    q[sigma[i]] = sigma[m]
            if (tuple(q), c) not in have:
                return False
    return True


def _cycles(s, pat, closed, L) -> int:
    """Closed cycles formed when every used open edge is glued."""
    glue = {}
    for j, o in closed:
        glue[o] = L + j
        glue[L + j] = o
    seen = set()
    cycles = 0
    for j, o in closed:
        if s[o] < 0 or o in seen:
            continue
        cycles += 1
        x = o
        while x not in seen:
            seen.add(x)
            z = glue[x]
            seen.add(z)
            x = s[z] if z < L else L + pat[z - L]
    return cycles


def search(n, ea, eb, parents, count, budget):
    """Count (or find) Hamiltonian cycles of an undirected graph.

    Returns ``(status, count, edges, work)`` where ``edges`` are the edge ids
    of one cycle when one exists, and ``work`` counts combined pattern pairs.
    """
    ea = [int(x) for x in ea]
    eb = [int(x) for x in eb]
    if n < 3:
        return COMPLETE, 0, [], 0
    sv = _Solver(n, ea, eb, [np.asarray(p, dtype=np.int64) for p in parents], budget)
    try:
        sids, wiring = sv.signatures()
        total = sv._combine(sids, wiring, 0, True)
        edges = sv.cycle_edges() if total else []
    except _OutOfBudget:
        return BUDGET, 0, [], sv.work
    return COMPLETE, total, edges, sv.work
