"""Pure-Python search kernel, used when the compiled one is unavailable.

It mirrors ``_kernel.pyx`` step for step, so both return the same counts,
first cycles and node totals.
"""

from __future__ import annotations

COMPLETE, BUDGET = 0, 2
FREE, TAKEN, GONE = 0, 1, 2


class _State:
    """Edge decisions with propagation and an undo trail.

    Undirected: a vertex needs exactly two taken edges. Directed: one taken
    out-arc and one taken in-arc. Taken edges form vertex-disjoint paths
    (fragments). ``head[t]`` is the start of the fragment ending at ``t`` and
    ``tail[s]`` the end of the fragment starting at ``s``; undirected
    fragments have no orientation, so there ``head`` and ``tail`` coincide and
    map each end to the other.
    """

    def __init__(self, n, ea, eb, directed):
        self.n = n
        self.ea = ea
        self.eb = eb
        self.directed = directed
        m = len(ea)
        self.state = [FREE] * m
        self.out_e = [[] for _ in range(n)]
        self.in_e = [[] for _ in range(n)] if directed else self.out_e
        for e in range(m):
            self.out_e[ea[e]].append(e)
            self.in_e[eb[e]].append(e)
        self.need = 1 if directed else 2
        self.av_out = [len(x) for x in self.out_e]
        self.av_in = [len(x) for x in self.in_e] if directed else self.av_out
        self.tk_out = [0] * n
        self.tk_in = [0] * n if directed else self.tk_out
        self.head = list(range(n))
        self.tail = list(range(n)) if directed else self.head
        self.taken = 0
        self.solved = False
        self.tip = -1
        self.ends = (-1, -1)
        self.trail: list[tuple[int, int, int]] = []
        self.queue: list[int] = []

    def undo(self, mark):
        t = self.trail
        while len(t) > mark:
            kind, x, old = t.pop()
            if kind == 0:
                a, b = self.ea[x], self.eb[x]
                if self.state[x] == TAKEN:
                    self.taken -= 1
                    self.tk_out[a] -= 1
                    self.tk_in[b] -= 1
                else:
                    self.av_out[a] += 1
                    self.av_in[b] += 1
                self.state[x] = FREE
            elif kind == 1:
                self.head[x] = old
            else:
                self.tail[x] = old
        self.solved = False
        self.queue.clear()

    def delete(self, e) -> bool:
        s = self.state[e]
        if s != FREE:
            return s == GONE
        a, b = self.ea[e], self.eb[e]
        self.state[e] = GONE
        self.trail.append((0, e, 0))
        self.av_out[a] -= 1
        self.av_in[b] -= 1
        self.queue.append(a)
        self.queue.append(b)
        return True

    def take(self, e) -> bool:
        s = self.state[e]
        if s != FREE:
            return s == TAKEN
        a, b = self.ea[e], self.eb[e]
        if self.tk_out[a] == self.need or self.tk_in[b] == self.need:
            return False
        closing = self.head[a] == b
        if closing and self.taken + 1 != self.n:
            return False
        self.state[e] = TAKEN
        self.trail.append((0, e, 0))
        self.taken += 1
        self.tk_out[a] += 1
        self.tk_in[b] += 1
        if closing:
            self.solved = True
            return True
        if self.directed:
            s0, t0 = self.head[a], self.tail[b]
        else:
            s0, t0 = self.head[a], self.head[b]
        self.trail.append((2, s0, self.tail[s0]))
        self.tail[s0] = t0
        self.trail.append((1, t0, self.head[t0]))
        self.head[t0] = s0
        self.ends = (s0, t0)
        self.queue.extend((a, b, s0, t0))
        return True

    def propagate(self) -> bool:
        q = self.queue
        while q and not self.solved:
            v = q.pop()
            if not self._side(v, self.out_e, self.av_out, self.tk_out, True):
                return False
            if self.directed and not self._side(v, self.in_e, self.av_in, self.tk_in, False):
                return False
        q.clear()
        return True

    def _side(self, v, inc, av, tk, out) -> bool:
        need = self.need
        if av[v] < need:
            return False
        if tk[v] == need:
            if av[v] > need:
                for e in inc[v]:
                    if self.state[e] == FREE:
                        self.delete(e)
        elif av[v] == need:
            for e in inc[v]:
                if self.state[e] == FREE and not self.take(e):
                    return False
                if self.solved:
                    return True
        elif tk[v] == need - 1 and self.taken + 1 < self.n:
            # an edge joining the two ends of a fragment would close a short cycle
            w = self.head[v] if out else self.tail[v]
            if w != v:
                for e in inc[v]:
                    if self.state[e] == FREE and self.ea[e] + self.eb[e] - v == w:
                        self.delete(e)
        return True

    def is_open(self, v) -> bool:
        # a fragment end that still lacks its outgoing edge
        if self.directed:
            return self.tk_out[v] == 0 and self.tk_in[v] == 1
        return self.tk_out[v] == 1

    def pick(self) -> int:
        """Vertex to branch on: the tip of the last extended fragment if it
        is still open, else the open end with the fewest free edges, else
        the unsaturated vertex with the fewest free edges."""
        if self.tip >= 0 and self.is_open(self.tip):
            return self.tip
        best, best_k = -1, 1 << 62
        for v in range(self.n):
            if self.is_open(v):
                k = self.av_out[v] - self.tk_out[v]
                if k < best_k:
                    best, best_k = v, k
        if best >= 0:
            return best
        for v in range(self.n):
            if self.tk_out[v] < self.need:
                k = self.av_out[v] - self.tk_out[v]
                if k < best_k:
                    best, best_k = v, k
        return best

    def cycle(self) -> list[int]:
        nbr = [[] for _ in range(self.n)]
        for e, s in enumerate(self.state):
            if s == TAKEN:
                nbr[self.ea[e]].append(self.eb[e])
                if not self.directed:
                    nbr[self.eb[e]].append(self.ea[e])
        seq = [0]
        prev = -1
        while len(seq) < self.n:
            cur = seq[-1]
            nxt = nbr[cur][0]
            if nxt == prev:
                nxt = nbr[cur][1]
            prev = cur
            seq.append(nxt)
        return seq


def search(n, ea, eb, directed, count, budget):
    """Hamiltonian cycles of the graph with edges ``ea[i] - eb[i]``.

    Returns ``(status, count, cycle, nodes)``. ``count`` counts each cycle
    once as an edge set; ``cycle`` is the first one found, or empty.
    Branching on vertex ``v`` with free edges ``e_0..e_k`` splits on which
    ``e_i`` is the first one taken, so branches are disjoint.
    """
    ea = [int(x) for x in ea]
    eb = [int(x) for x in eb]
    if n < 2 or (not directed and n < 3):
        return COMPLETE, 0, [], 0
    st = _State(n, ea, eb, directed)
    st.queue.extend(range(n))
    if not st.propagate():
        return COMPLETE, 0, [], 0
    if st.solved:
        return COMPLETE, 1, st.cycle(), 0
    total, nodes = 0, 0
    first: list[int] = []
    v = st.pick()
    # frame: [vertex, candidate edges, next branch, trail mark]
    stack = [[v, [e for e in st.out_e[v] if st.state[e] == FREE], 0, len(st.trail)]]
    while stack:
        fr = stack[-1]
        v, cands, i, mark = fr
        st.undo(mark)
        if i >= len(cands):
            stack.pop()
            continue
        fr[2] = i + 1
        nodes += 1
        if nodes > budget:
            st.undo(0)
            return BUDGET, total, first, nodes
        ok = True
        for j in range(i):
            if not st.delete(cands[j]):
                ok = False
                break
        e = cands[i]
        if not (ok and st.take(e)):
            continue
        # continue from the far end of the fragment the new edge joined
        st.tip = st.ends[1] if st.ea[e] == v else st.ends[0]
        if not st.propagate():
            continue
        if st.solved:
            total += 1
            if not first:
                first = st.cycle()
            if not count:
                return COMPLETE, 1, first, nodes
            continue
        w = st.pick()
        if w >= 0:
            stack.append([w, [e for e in st.out_e[w] if st.state[e] == FREE], 0, len(st.trail)])
    return COMPLETE, total, first, nodes
