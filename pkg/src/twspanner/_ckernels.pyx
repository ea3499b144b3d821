# cython: language_level=3
"""Compiled kernels: Dijkstra-based dilation scan, greedy spanner, tree-width subset DP.

Contract identical to ``twspanner._pykernels``.
"""
import numpy as np

from libc.math cimport sqrt, INFINITY
from libc.stdlib cimport malloc, realloc, free
from libc.stdint cimport uint32_t, uint8_t, int64_t


cdef extern from *:
    int __builtin_popcount(unsigned int) nogil
    int __builtin_ctz(unsigned int) nogil


# ---------------------------------------------------------------- binary heap

cdef struct Heap:
    double *key
    int *val
    Py_ssize_t size
    Py_ssize_t cap


cdef int heap_init(Heap *h, Py_ssize_t cap) except -1:
    if cap < 16:
        cap = 16
    h.key = <double *> malloc(cap * sizeof(double))
    h.val = <int *> malloc(cap * sizeof(int))
    if h.key == NULL or h.val == NULL:
        raise MemoryError()
    h.size = 0
    h.cap = cap
    return 0


cdef void heap_free(Heap *h) noexcept:
    free(h.key)
    free(h.val)


cdef int heap_push(Heap *h, double k, int v) except -1 nogil:
    cdef Py_ssize_t i, parent
    if h.size == h.cap:
        h.cap *= 2
        h.key = <double *> realloc(h.key, h.cap * sizeof(double))
        h.val = <int *> realloc(h.val, h.cap * sizeof(int))
        if h.key == NULL or h.val == NULL:
            with gil:
                raise MemoryError()
    i = h.size
    h.size += 1
    while i > 0:
        parent = (i - 1) >> 1
        # ties broken by vertex index, matching heapq's tuple ordering
        if h.key[parent] < k or (h.key[parent] == k and h.val[parent] <= v):
            break
        h.key[i] = h.key[parent]
        h.val[i] = h.val[parent]
        i = parent
    h.key[i] = k
    h.val[i] = v
    return 0


cdef inline bint heap_less(Heap *h, Py_ssize_t a, Py_ssize_t b) noexcept nogil:
    return h.key[a] < h.key[b] or (h.key[a] == h.key[b] and h.val[a] < h.val[b])


cdef void heap_pop(Heap *h, double *k, int *v) noexcept nogil:
    cdef Py_ssize_t i = 0, child
    cdef double lk
    cdef int lv
    k[0] = h.key[0]
    v[0] = h.val[0]
    h.size -= 1
    if h.size == 0:
        return
    lk = h.key[h.size]
    lv = h.val[h.size]
    while True:
        child = 2 * i + 1
        if child >= h.size:
            break
        if child + 1 < h.size and heap_less(h, child + 1, child):
            child += 1
        if h.key[child] < lk or (h.key[child] == lk and h.val[child] < lv):
            h.key[i] = h.key[child]
            h.val[i] = h.val[child]
            i = child
        else:
            break
    h.key[i] = lk
    h.val[i] = lv


# ---------------------------------------------------------------- shortest paths

cdef void _dijkstra(const int64_t[::1] indptr, const int64_t[::1] indices,
                    const double[::1] weights, int source, double[::1] dist,
                    uint8_t *done, Heap *h) noexcept nogil:
    cdef Py_ssize_t n = dist.shape[0], a
    cdef int u, v
    cdef double d, nd
    for a in range(n):
        dist[a] = INFINITY
        done[a] = 0
    dist[source] = 0.0
    h.size = 0
    heap_push(h, 0.0, source)
    while h.size > 0:
        heap_pop(h, &d, &u)
        if done[u]:
            continue
        done[u] = 1
        for a in range(indptr[u], indptr[u + 1]):
            v = <int> indices[a]
            nd = d + weights[a]
            if nd < dist[v]:
                dist[v] = nd
                heap_push(h, nd, v)


def sssp(indptr, indices, weights, int source):
    cdef const int64_t[::1] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef const int64_t[::1] ix = np.ascontiguousarray(indices, dtype=np.int64)
    cdef const double[::1] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef Py_ssize_t n = ip.shape[0] - 1
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] dist = out
    cdef uint8_t *done = <uint8_t *> malloc(n + 1)
    cdef Heap h
    heap_init(&h, ix.shape[0] + 1)
    try:
        _dijkstra(ip, ix, w, source, dist, done, &h)
    finally:
        heap_free(&h)
        free(done)
    return out


def dilation_scan(indptr, indices, weights, coords):
    cdef const int64_t[::1] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef const int64_t[::1] ix = np.ascontiguousarray(indices, dtype=np.int64)
    cdef const double[::1] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef const double[:, ::1] pts = np.ascontiguousarray(coords, dtype=np.float64)
    cdef Py_ssize_t n = pts.shape[0], dim = pts.shape[1]
    cdef Py_ssize_t i, j, c
    cdef double best = -INFINITY, ratio, eu, diff, total = 0.0
    cdef Py_ssize_t bi = -1, bj = -1, count = 0
    cdef bint connected = True
    dist_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] dist = dist_arr
    cdef uint8_t *done = <uint8_t *> malloc(n + 1)
    cdef Heap h
    heap_init(&h, ix.shape[0] + 1)
    try:
        with nogil:
            for i in range(n - 1):
                _dijkstra(ip, ix, w, <int> i, dist, done, &h)
                for j in range(i + 1, n):
                    if dist[j] == INFINITY:
                        best = INFINITY
                        bi = i
                        bj = j
                        connected = False
                        break
                    eu = 0.0
                    for c in range(dim):
                        diff = pts[i, c] - pts[j, c]
                        eu += diff * diff
                    ratio = dist[j] / sqrt(eu)
                    total += ratio
                    count += 1
                    if ratio > best:
                        best = ratio
                        bi = i
                        bj = j
                if not connected:
                    break
    finally:
        heap_free(&h)
        free(done)
    if count == 0 and connected:
        best = 1.0
    return best, bi, bj, connected, total, count


# ---------------------------------------------------------------- greedy spanner

cdef void _add_arc(int **nbr, double **wt, int *deg, int *cap, int x, int y,
                   double length) noexcept nogil:
    if deg[x] == cap[x]:
        cap[x] *= 2
        nbr[x] = <int *> realloc(nbr[x], cap[x] * sizeof(int))
        wt[x] = <double *> realloc(wt[x], cap[x] * sizeof(double))
    nbr[x][deg[x]] = y
    wt[x][deg[x]] = length
    deg[x] += 1


def greedy_edges(coords, pair_i, pair_j, pair_len, double t):
    cdef const int64_t[::1] pi = np.ascontiguousarray(pair_i, dtype=np.int64)
    cdef const int64_t[::1] pj = np.ascontiguousarray(pair_j, dtype=np.int64)
    cdef const double[::1] pl = np.ascontiguousarray(pair_len, dtype=np.float64)
    cdef Py_ssize_t n = len(coords), m = pi.shape[0]
    cdef Py_ssize_t p, a, ntouched, nout = 0, outcap = 16
    cdef int u, v, x, y
    cdef double limit, d, nd, length
    cdef bint reached
    cdef int *deg = <int *> malloc((n + 1) * sizeof(int))
    cdef int *cap = <int *> malloc((n + 1) * sizeof(int))
    cdef int **nbr = <int **> malloc((n + 1) * sizeof(int *))
    cdef double **wt = <double **> malloc((n + 1) * sizeof(double *))
    cdef double *dist = <double *> malloc((n + 1) * sizeof(double))
    cdef int *touched = <int *> malloc((n + 1) * sizeof(int))
    cdef int *out = <int *> malloc(2 * outcap * sizeof(int))
    cdef Heap h
    heap_init(&h, 64)
    for a in range(n):
        deg[a] = 0
        cap[a] = 4
        nbr[a] = <int *> malloc(4 * sizeof(int))
        wt[a] = <double *> malloc(4 * sizeof(double))
        dist[a] = INFINITY
    try:
        with nogil:
            for p in range(m):
                u = <int> pi[p]
                v = <int> pj[p]
                length = pl[p]
                limit = t * length
                dist[u] = 0.0
                touched[0] = u
                ntouched = 1
                h.size = 0
                heap_push(&h, 0.0, u)
                reached = False
                while h.size > 0:
                    heap_pop(&h, &d, &x)
                    if d > dist[x]:
                        continue
                    if x == v:
                        reached = True
                        break
                    for a in range(deg[x]):
                        y = nbr[x][a]
                        nd = d + wt[x][a]
                        if nd <= limit and nd < dist[y]:
                            if dist[y] == INFINITY:
                                touched[ntouched] = y
                                ntouched += 1
                            dist[y] = nd
                            heap_push(&h, nd, y)
                for a in range(ntouched):
                    dist[touched[a]] = INFINITY
                if not reached:
                    _add_arc(nbr, wt, deg, cap, u, v, length)
                    _add_arc(nbr, wt, deg, cap, v, u, length)
                    if nout == outcap:
                        outcap *= 2
                        out = <int *> realloc(out, 2 * outcap * sizeof(int))
                    out[2 * nout] = u
                    out[2 * nout + 1] = v
                    nout += 1
        ei = np.empty(nout, dtype=np.int64)
        ej = np.empty(nout, dtype=np.int64)
        for a in range(nout):
            ei[a] = out[2 * a]
            ej[a] = out[2 * a + 1]
    finally:
        for a in range(n):
            free(nbr[a])
            free(wt[a])
        free(nbr)
        free(wt)
        free(deg)
        free(cap)
        free(dist)
        free(touched)
        free(out)
        heap_free(&h)
    return ei, ej


# ---------------------------------------------------------------- tree-width DP

cdef inline int _q_size(const uint32_t *adj, uint32_t s, int v) noexcept nogil:
    cdef uint32_t reach = adj[v]
    cdef uint32_t seen = reach & s
    cdef uint32_t stack = seen
    cdef uint32_t low, nb, new
    while stack:
        low = stack & (~stack + 1)
        stack ^= low
        nb = adj[__builtin_ctz(low)]
        reach |= nb
        new = nb & s & ~seen
        seen |= new
        stack |= new
    return __builtin_popcount(reach & ~s & ~((<uint32_t> 1) << v))


def q_size(adj_masks, s, int v):
    cdef uint32_t buf[32]
    cdef int i
    for i in range(len(adj_masks)):
        buf[i] = <uint32_t> adj_masks[i]
    return _q_size(buf, <uint32_t> s, v)


def tw_table(adj_masks, int n):
    if n > 24:
        raise ValueError("subset DP limited to 24 vertices")
    cdef uint32_t adj[32]
    cdef int i, v, q, best, val
    for i in range(n):
        adj[i] = <uint32_t> int(adj_masks[i])
    cdef Py_ssize_t size = (<Py_ssize_t> 1) << n
    table_arr = np.zeros(size, dtype=np.uint8)
    cdef uint8_t[::1] table = table_arr
    cdef uint32_t s, rest, low, prev
    with nogil:
        for s in range(1, <uint32_t> size):
            best = 255
            rest = s
            while rest:
                low = rest & (~rest + 1)
                rest ^= low
                v = __builtin_ctz(low)
                prev = s ^ low
                val = table[prev]
                if val >= best:
                    continue
                q = _q_size(adj, prev, v)
                if q > val:
                    val = q
                if val < best:
                    best = val
            table[s] = <uint8_t> best
    return table_arr
