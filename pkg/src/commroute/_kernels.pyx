# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of _search_py: same functions, same semantics.

Placements are packed 4 bits per node into a 64-bit code, so this kernel
handles up to 16 nodes and 64 connections; commroute.oracle falls back to
the pure-Python twin beyond that.
"""

import heapq

from libc.stdlib cimport free, malloc

IMPL_NAME = "compiled"

MAX_NODES = 16
MAX_CONNECTIONS = 64

ctypedef unsigned long long u64


cdef u64 _encode(int* tok, int n) noexcept:
    cdef u64 code = 0
    cdef int i
    for i in range(n):
        code = (code << 4) | <u64>tok[i]
    return code


cdef void _decode(u64 code, int* tok, int n) noexcept:
    cdef int i
    for i in range(n - 1, -1, -1):
        tok[i] = <int>(code & 15)
        code >>= 4
    return


cdef u64 _coverage(int* tok, int* hw, int ne2, int* conn_bit, int n) noexcept:
    cdef u64 mask = 0
    cdef int k, b
    for k in range(0, ne2, 2):
        b = conn_bit[tok[hw[k]] * n + tok[hw[k + 1]]]
        if b >= 0:
            mask |= (<u64>1) << b
    return mask


cdef int _popcount(u64 x) noexcept:
    cdef int c = 0
    while x:
        x &= x - 1
        c += 1
    return c


cdef bint _push_mask(list masks, u64 c):
    cdef Py_ssize_t i
    cdef u64 m
    for i in range(len(masks)):
        m = masks[i]
        if m & c == c:
            return False
    cdef list keep = []
    for i in range(len(masks)):
        m = masks[i]
        if m & c != m:
            keep.append(masks[i])
    keep.append(c)
    masks[:] = keep
    return True


cdef class _Problem:
    cdef int n, ne2, nm
    cdef int* conn_bit
    cdef int* hw
    cdef int* m_flat
    cdef int* m_off
    cdef int* m_len

    def __cinit__(self, int n, conn_bit, hw_edges, matchings):
        cdef int total = 0
        for m in matchings:
            total += len(m)
        self.n = n
        self.ne2 = len(hw_edges)
        self.nm = len(matchings)
        self.conn_bit = <int*>malloc(sizeof(int) * max(1, len(conn_bit)))
        self.hw = <int*>malloc(sizeof(int) * max(1, self.ne2))
        self.m_flat = <int*>malloc(sizeof(int) * max(1, total))
        self.m_off = <int*>malloc(sizeof(int) * max(1, self.nm))
        self.m_len = <int*>malloc(sizeof(int) * max(1, self.nm))
        cdef int i, k = 0
        for i in range(len(conn_bit)):
            self.conn_bit[i] = conn_bit[i]
        for i in range(self.ne2):
            self.hw[i] = hw_edges[i]
        for i in range(self.nm):
            self.m_off[i] = k
            self.m_len[i] = len(matchings[i])
            for x in matchings[i]:
                self.m_flat[k] = x
                k += 1

    def __dealloc__(self):
        free(self.conn_bit)
        free(self.hw)
        free(self.m_flat)
        free(self.m_off)
        free(self.m_len)

    cdef void apply(self, u64 code, int mi, int* out) noexcept:
        cdef int k, u, v, tmp
        _decode(code, out, self.n)
        for k in range(self.m_off[mi], self.m_off[mi] + self.m_len[mi], 2):
            u = self.m_flat[k]
            v = self.m_flat[k + 1]
            tmp = out[u]
            out[u] = out[v]
            out[v] = tmp


def min_steps(int n, starts, matchings, hw_edges, conn_bit, full_mask, max_depth):
    """Fewest swap steps until full coverage; -1 if exhausted."""
    if n > MAX_NODES or len(conn_bit) > n * n or full_mask >> MAX_CONNECTIONS:
        raise ValueError("instance too large for the compiled kernel")
    cdef _Problem prob = _Problem(n, conn_bit, hw_edges, matchings)
    cdef u64 full = full_mask
    cdef dict visited = {}
    cdef list frontier = [], nxt
    cdef int tok[16]
    cdef int i, mi, depth = 0, maxd = max_depth
    cdef u64 code, cov, c2, code2
    for s in starts:
        for i in range(n):
            tok[i] = s[i]
        cov = _coverage(tok, prob.hw, prob.ne2, prob.conn_bit, n)
        if cov == full:
            return 0
        code = _encode(tok, n)
        if _push_mask(visited.setdefault(code, []), cov):
            frontier.append((code, cov))
    while frontier and depth < maxd:
        depth += 1
        nxt = []
        for code, cov in frontier:
            for mi in range(prob.nm):
                prob.apply(code, mi, tok)
                c2 = cov | _coverage(tok, prob.hw, prob.ne2, prob.conn_bit, n)
                if c2 == full:
                    return depth
                code2 = _encode(tok, n)
                if _push_mask(visited.setdefault(code2, []), c2):
                    nxt.append((code2, c2))
        frontier = nxt
    return -1


def min_swaps_within(int n, starts, matchings, hw_edges, conn_bit, full_mask,
                     max_steps, swap_capacity, step_capacity):
    """Fewest swaps within a step budget; -1 when infeasible."""
    if n > MAX_NODES or len(conn_bit) > n * n or full_mask >> MAX_CONNECTIONS:
        raise ValueError("instance too large for the compiled kernel")
    cdef _Problem prob = _Problem(n, conn_bit, hw_edges, matchings)
    cdef u64 full = full_mask
    cdef int budget = max_steps, swap_cap = swap_capacity, step_cap = step_capacity
    cdef dict visited = {}
    cdef list heap = [], entries, keep
    cdef int tok[16]
    cdef int i, mi, h, steps, s2, g, g2, uc
    cdef long counter = 0
    cdef u64 code, cov, c2, code2, uncov
    cdef bint dominated

    for s in starts:
        for i in range(n):
            tok[i] = s[i]
        cov = _coverage(tok, prob.hw, prob.ne2, prob.conn_bit, n)
        uncov = full & ~cov
        if uncov:
            if swap_cap <= 0:
                continue
            uc = _popcount(uncov)
            if step_cap > 0 and uc > budget * step_cap:
                continue
            h = (uc + swap_cap - 1) // swap_cap
        else:
            h = 0
        code = _encode(tok, n)
        entries = visited.setdefault(code, [])
        entries.append((cov, 0, 0))
        heapq.heappush(heap, (h, 0, 0, counter, code, cov))
        counter += 1

    cdef int msize
    while heap:
        item = heapq.heappop(heap)
        g = item[1]
        steps = item[2]
        code = item[4]
        cov = item[5]
        if cov == full:
            return g
        if steps >= budget:
            continue
        for mi in range(prob.nm):
            prob.apply(code, mi, tok)
            c2 = cov | _coverage(tok, prob.hw, prob.ne2, prob.conn_bit, n)
            msize = prob.m_len[mi] // 2
            g2 = g + msize
            s2 = steps + 1
            uncov = full & ~c2
            if uncov:
                if swap_cap <= 0:
                    continue
                uc = _popcount(uncov)
                if step_cap > 0 and uc > (budget - s2) * step_cap:
                    continue
                h = (uc + swap_cap - 1) // swap_cap
            else:
                h = 0
            code2 = _encode(tok, n)
            entries = visited.setdefault(code2, [])
            dominated = False
            for e in entries:
                if (<u64>e[0]) & c2 == c2 and e[1] <= s2 and e[2] <= g2:
                    dominated = True
                    break
            if dominated:
                continue
            keep = []
            for e in entries:
                if not (c2 & (<u64>e[0]) == (<u64>e[0]) and s2 <= e[1] and g2 <= e[2]):
                    keep.append(e)
            keep.append((c2, s2, g2))
            entries[:] = keep
            heapq.heappush(heap, (g2 + h, g2, s2, counter, code2, c2))
            counter += 1
    return -1
