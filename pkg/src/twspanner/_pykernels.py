"""Pure-Python kernels. Same contract as the compiled ``_ckernels`` module.

Graphs are passed in CSR form: ``indptr`` (n+1), ``indices`` and ``weights``
(one entry per directed arc). Outputs must agree with the compiled kernels
bit-for-bit on witnesses and edge lists, and to rounding on distances.
"""
import heapq
import math

import numpy as np

INF = math.inf


def sssp(indptr, indices, weights, source):
    n = len(indptr) - 1
    dist = [INF] * n
    dist[source] = 0.0
    heap = [(0.0, source)]
    done = [False] * n
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for a in range(indptr[u], indptr[u + 1]):
            v = indices[a]
            nd = d + weights[a]
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return np.array(dist, dtype=np.float64)


def dilation_scan(indptr, indices, weights, coords):
    """Return (max_ratio, i, j, connected, ratio_sum, pair_count) over pairs i < j.

    Pairs are scanned in lexicographic order and the first strict maximum wins.
    Stops at the first unreachable pair.
    """
    indptr = [int(x) for x in indptr]
    indices = [int(x) for x in indices]
    weights = [float(x) for x in weights]
    pts = [tuple(float(c) for c in row) for row in coords]
    n = len(pts)
    best, bi, bj = -INF, -1, -1
    total, count = 0.0, 0
    for i in range(n - 1):
        dist = sssp(indptr, indices, weights, i)
        pi = pts[i]
        for j in range(i + 1, n):
            dg = dist[j]
            if dg == INF:
                return INF, i, j, False, total, count
            ratio = dg / math.dist(pi, pts[j])
            total += ratio
            count += 1
            if ratio > best:
                best, bi, bj = ratio, i, j
    if count == 0:
        best = 1.0
    return best, bi, bj, True, total, count


def greedy_edges(coords, pair_i, pair_j, pair_len, t):
    """Greedy t-spanner over pairs given in processing order; returns (ei, ej) arrays."""
    n = len(coords)
    adj = [[] for _ in range(n)]
    out_i, out_j = [], []
    dist = [INF] * n
    for u, v, length in zip(pair_i.tolist(), pair_j.tolist(), pair_len.tolist()):
        limit = t * length
        # Dijkstra from u, pruned at `limit`, stopping once v is settled.
        touched = [u]
        dist[u] = 0.0
        heap = [(0.0, u)]
        reached = False
        while heap:
            d, x = heapq.heappop(heap)
            if d > dist[x]:
                continue
            if x == v:
                reached = True
                break
            for y, w in adj[x]:
                nd = d + w
                if nd <= limit and nd < dist[y]:
                    if dist[y] == INF:
                        touched.append(y)
                    dist[y] = nd
                    heapq.heappush(heap, (nd, y))
        for x in touched:
            dist[x] = INF
        if not reached:
            adj[u].append((v, length))
            adj[v].append((u, length))
            out_i.append(u)
            out_j.append(v)
    return np.array(out_i, dtype=np.int64), np.array(out_j, dtype=np.int64)


def q_size(adj, s, v):
    """Number of vertices outside s+{v} reachable from v through vertices of s."""
    reach = adj[v]
    seen = reach & s
    stack = seen
    while stack:
        low = stack & -stack
        stack ^= low
        nb = adj[low.bit_length() - 1]
        reach |= nb
        new = nb & s & ~seen
        seen |= new
        stack |= new
    return (reach & ~s & ~(1 << v)).bit_count()


def tw_table(adj_masks, n):
    """Subset DP: table[S] = min over orderings of S of the max elimination degree."""
    adj = [int(a) for a in adj_masks]
    size = 1 << n
    table = bytearray(size)
    for s in range(1, size):
        best = 255
        rest = s
        while rest:
            low = rest & -rest
            rest ^= low
            v = low.bit_length() - 1
            prev = s ^ low
            val = table[prev]
            if val >= best:
                continue
            q = q_size(adj, prev, v)
            if q > val:
                val = q
            if val < best:
                best = val
        table[s] = best
    return np.frombuffer(bytes(table), dtype=np.uint8)
