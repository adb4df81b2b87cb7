# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernel; same algorithm and results as ``_pykernel``."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, int8_t

cnp.import_array()

COMPLETE = 0
BUDGET = 2

cdef enum:
    FREE = 0
    TAKEN = 1
    GONE = 2


cdef class _State:
    cdef int64_t n, m, need, taken, tip, end0, end1
    cdef bint directed, solved
    cdef const int64_t[::1] ea
    cdef const int64_t[::1] eb
    cdef int8_t[::1] state
    cdef int64_t[::1] out_ptr, out_idx, in_ptr, in_idx
    cdef int64_t[::1] av_out, av_in, tk_out, tk_in, head, tail
    cdef int64_t[::1] tr_kind, tr_x, tr_old
    cdef int64_t ntrail
    cdef int64_t[::1] queue
    cdef int64_t nqueue

    def __init__(self, int64_t n, const int64_t[::1] ea, const int64_t[::1] eb, bint directed):
        cdef int64_t m = ea.shape[0], e, v
        self.n = n
        self.m = m
        self.ea = ea
        self.eb = eb
        self.directed = directed
        self.need = 1 if directed else 2
        self.state = np.zeros(m, dtype=np.int8)
        # incidence lists in edge order, as compressed rows
        out_deg = np.zeros(n + 1, dtype=np.int64)
        in_deg = np.zeros(n + 1, dtype=np.int64)
        for e in range(m):
            out_deg[ea[e] + 1] += 1
            if directed:
                in_deg[eb[e] + 1] += 1
            else:
                out_deg[eb[e] + 1] += 1
        self.out_ptr = np.cumsum(out_deg)
        self.out_idx = np.zeros(max(1, int(self.out_ptr[n])), dtype=np.int64)
        fill = np.array(self.out_ptr[:n], dtype=np.int64)
        if directed:
            self.in_ptr = np.cumsum(in_deg)
            self.in_idx = np.zeros(max(1, int(self.in_ptr[n])), dtype=np.int64)
            fill_in = np.array(self.in_ptr[:n], dtype=np.int64)
        else:
            self.in_ptr = self.out_ptr
            self.in_idx = self.out_idx
        for e in range(m):
            self.out_idx[fill[ea[e]]] = e
            fill[ea[e]] += 1
            if directed:
                self.in_idx[fill_in[eb[e]]] = e
                fill_in[eb[e]] += 1
            else:
                self.out_idx[fill[eb[e]]] = e
                fill[eb[e]] += 1
        self.av_out = np.diff(self.out_ptr)
        self.tk_out = np.zeros(n, dtype=np.int64)
        self.head = np.arange(n, dtype=np.int64)
        if directed:
            self.av_in = np.diff(self.in_ptr)
            self.tk_in = np.zeros(n, dtype=np.int64)
            self.tail = np.arange(n, dtype=np.int64)
        else:
            self.av_in = self.av_out
            self.tk_in = self.tk_out
            self.tail = self.head
        self.taken = 0
        self.solved = False
        self.tip = -1
        self.end0 = -1
        self.end1 = -1
        # each edge is decided once per branch and a take writes three entries
        self.tr_kind = np.zeros(3 * m + 8, dtype=np.int64)
        self.tr_x = np.zeros(3 * m + 8, dtype=np.int64)
        self.tr_old = np.zeros(3 * m + 8, dtype=np.int64)
        self.ntrail = 0
        self.queue = np.zeros(4 * m + n + 8, dtype=np.int64)
        self.nqueue = 0

    cdef inline void push(self, int64_t v):
        self.queue[self.nqueue] = v
        self.nqueue += 1

    cdef inline void log(self, int64_t kind, int64_t x, int64_t old):
        self.tr_kind[self.ntrail] = kind
        self.tr_x[self.ntrail] = x
        self.tr_old[self.ntrail] = old
        self.ntrail += 1

    cdef void undo(self, int64_t mark):
        cdef int64_t kind, x, a, b
        while self.ntrail > mark:
            self.ntrail -= 1
            kind = self.tr_kind[self.ntrail]
            x = self.tr_x[self.ntrail]
            if kind == 0:
                a = self.ea[x]
                b = self.eb[x]
                if self.state[x] == TAKEN:
                    self.taken -= 1
                    self.tk_out[a] -= 1
                    self.tk_in[b] -= 1
                else:
                    self.av_out[a] += 1
                    self.av_in[b] += 1
                self.state[x] = FREE
            elif kind == 1:
                self.head[x] = self.tr_old[self.ntrail]
            else:
                self.tail[x] = self.tr_old[self.ntrail]
        self.solved = False
        self.nqueue = 0

    cdef bint delete(self, int64_t e):
        cdef int8_t s = self.state[e]
        if s != FREE:
            return s == GONE
        cdef int64_t a = self.ea[e], b = self.eb[e]
        self.state[e] = GONE
        self.log(0, e, 0)
        self.av_out[a] -= 1
        self.av_in[b] -= 1
        self.push(a)
        self.push(b)
        return True

    cdef bint take(self, int64_t e):
        cdef int8_t s = self.state[e]
        if s != FREE:
            return s == TAKEN
        cdef int64_t a = self.ea[e], b = self.eb[e], s0, t0
        if self.tk_out[a] == self.need or self.tk_in[b] == self.need:
            return False
        cdef bint closing = self.head[a] == b
        if closing and self.taken + 1 != self.n:
            return False
        self.state[e] = TAKEN
        self.log(0, e, 0)
        self.taken += 1
        self.tk_out[a] += 1
        self.tk_in[b] += 1
        if closing:
            self.solved = True
            return True
        s0 = self.head[a]
        t0 = self.tail[b] if self.directed else self.head[b]
        self.log(2, s0, self.tail[s0])
        self.tail[s0] = t0
        self.log(1, t0, self.head[t0])
        self.head[t0] = s0
        self.end0 = s0
        self.end1 = t0
        self.push(a)
        self.push(b)
        self.push(s0)
        self.push(t0)
        return True

    cdef bint propagate(self):
        cdef int64_t v
        while self.nqueue > 0 and not self.solved:
            self.nqueue -= 1
            v = self.queue[self.nqueue]
            if not self.side(v, True):
                return False
            if self.directed and not self.side(v, False):
                return False
        self.nqueue = 0
        return True

    cdef bint side(self, int64_t v, bint out):
        cdef int64_t[::1] ptr = self.out_ptr if out else self.in_ptr
        cdef int64_t[::1] idx = self.out_idx if out else self.in_idx
        cdef int64_t[::1] av = self.av_out if out else self.av_in
        cdef int64_t[::1] tk = self.tk_out if out else self.tk_in
        cdef int64_t need = self.need, j, e, w
        if av[v] < need:
            return False
        if tk[v] == need:
            if av[v] > need:
                for j in range(ptr[v], ptr[v + 1]):
                    e = idx[j]
                    if self.state[e] == FREE:
                        self.delete(e)
        elif av[v] == need:
            for j in range(ptr[v], ptr[v + 1]):
                e = idx[j]
                if self.state[e] == FREE and not self.take(e):
                    return False
                if self.solved:
                    return True
        elif tk[v] == need - 1 and self.taken + 1 < self.n:
            # an edge joining the two ends of a fragment would close a short cycle
            w = self.head[v] if out else self.tail[v]
            if w != v:
                for j in range(ptr[v], ptr[v + 1]):
                    e = idx[j]
                    if self.state[e] == FREE and self.ea[e] + self.eb[e] - v == w:
                        self.delete(e)
        return True

    cdef inline bint is_open(self, int64_t v):
        if self.directed:
            return self.tk_out[v] == 0 and self.tk_in[v] == 1
        return self.tk_out[v] == 1

    cdef int64_t pick(self):
        cdef int64_t v, k, best = -1, best_k = 1 << 62
        if self.tip >= 0 and self.is_open(self.tip):
            return self.tip
        for v in range(self.n):
            if self.is_open(v):
                k = self.av_out[v] - self.tk_out[v]
                if k < best_k:
                    best = v
                    best_k = k
        if best >= 0:
            return best
        for v in range(self.n):
            if self.tk_out[v] < self.need:
                k = self.av_out[v] - self.tk_out[v]
                if k < best_k:
                    best = v
                    best_k = k
        return best

    cdef list cycle(self):
        cdef int64_t e, cur, nxt, prev = -1
        nbr = np.full((self.n, 2), -1, dtype=np.int64)
        cdef int64_t[:, ::1] nb = nbr
        for e in range(self.m):
            if self.state[e] == TAKEN:
                _add(nb, self.ea[e], self.eb[e])
                if not self.directed:
                    _add(nb, self.eb[e], self.ea[e])
        seq = [0]
        cur = 0
        while len(seq) < self.n:
            nxt = nb[cur, 0]
            if nxt == prev:
                nxt = nb[cur, 1]
            prev = cur
            cur = nxt
            seq.append(nxt)
        return seq


cdef inline void _add(int64_t[:, ::1] nb, int64_t v, int64_t w):
    if nb[v, 0] < 0:
        nb[v, 0] = w
    else:
        nb[v, 1] = w


def search(int64_t n, const int64_t[::1] ea, const int64_t[::1] eb, bint directed, bint count, int64_t budget):
    """Hamiltonian cycles of the graph with edges ``ea[i] - eb[i]``.

    Returns ``(status, count, cycle, nodes)`` exactly as ``_pykernel.search``.
    """
    if n < 2 or (not directed and n < 3):
        return COMPLETE, 0, [], 0
    cdef _State st = _State(n, ea, eb, directed)
    cdef int64_t v, w, e, i, j, mark, top
    cdef int64_t nodes = 0
    cdef bint ok
    for v in range(n):
        st.push(v)
    if not st.propagate():
        return COMPLETE, 0, [], 0
    if st.solved:
        return COMPLETE, 1, st.cycle(), 0
    total = 0
    first = []
    # frames: vertex, candidate slice in cbuf, next branch, trail mark
    cdef int64_t maxdeg = 0
    for v in range(n):
        maxdeg = max(maxdeg, st.out_ptr[v + 1] - st.out_ptr[v])
    cdef int64_t[::1] cbuf = np.zeros(n * maxdeg + n + 8, dtype=np.int64)
    cdef int64_t[:, ::1] fr = np.zeros((n + 2, 5), dtype=np.int64)
    cdef int64_t depth = 0
    v = st.pick()
    _frame(st, fr, cbuf, 0, v, 0)
    depth = 1
    while depth > 0:
        top = depth - 1
        v = fr[top, 0]
        i = fr[top, 3]
        mark = fr[top, 4]
        st.undo(mark)
        if i >= fr[top, 2] - fr[top, 1]:
            depth -= 1
            continue
        fr[top, 3] = i + 1
        nodes += 1
        if nodes > budget:
            st.undo(0)
            return BUDGET, total, first, nodes
        ok = True
        for j in range(i):
            if not st.delete(cbuf[fr[top, 1] + j]):
                ok = False
                break
        e = cbuf[fr[top, 1] + i]
        if not (ok and st.take(e)):
            continue
        # continue from the far end of the fragment the new edge joined
        st.tip = st.end1 if st.ea[e] == v else st.end0
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
            _frame(st, fr, cbuf, depth, w, fr[top, 2])
            depth += 1
    return COMPLETE, total, first, nodes


cdef int64_t _frame(_State st, int64_t[:, ::1] fr, int64_t[::1] cbuf, int64_t depth, int64_t v, int64_t start):
    cdef int64_t j, e, k = start
    for j in range(st.out_ptr[v], st.out_ptr[v + 1]):
        e = st.out_idx[j]
        if st.state[e] == FREE:
            cbuf[k] = e
            k += 1
    fr[depth, 0] = v
    fr[depth, 1] = start
    fr[depth, 2] = k
    fr[depth, 3] = 0
    fr[depth, 4] = st.ntrail
    return k
