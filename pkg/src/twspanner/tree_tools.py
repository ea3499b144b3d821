"""Spanning trees and tree surgery: EMST, separators, m-way splits, representative pruning."""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from twspanner.core_graph import GeoGraph, PointSet


class NotATreeError(ValueError):
    pass


# ---------------------------------------------------------------- spanning trees

def emst(ps: PointSet) -> GeoGraph:
    """Euclidean MST by dense Prim, O(n^2).

    Edges are keyed by (length, i, j) with i < j, so the tree is the unique
    minimum under that total order (the same tree Kruskal would return).
    """
    n = len(ps)
    if n == 1:
        return GeoGraph(ps, [], meta={"algo": "emst"})
    pts = ps.coords
    idx = np.arange(n)
    in_tree = np.zeros(n, dtype=bool)
    in_tree[0] = True
    best = np.sqrt(((pts - pts[0]) ** 2).sum(axis=1))
    lo, hi = np.minimum(idx, 0), np.maximum(idx, 0)
    edges = []
    for _ in range(n - 1):
        cand = np.where(in_tree, np.inf, best)
        ties = np.flatnonzero(cand == cand.min())
        v = int(ties[np.lexsort((hi[ties], lo[ties]))[0]])
        edges.append((int(lo[v]), int(hi[v])))
        in_tree[v] = True
        d = np.sqrt(((pts - pts[v]) ** 2).sum(axis=1))
        nlo, nhi = np.minimum(idx, v), np.maximum(idx, v)
        better = ~in_tree & (
            (d < best) | ((d == best) & ((nlo < lo) | ((nlo == lo) & (nhi < hi))))
        )
        best = np.where(better, d, best)
        lo = np.where(better, nlo, lo)
        hi = np.where(better, nhi, hi)
    return GeoGraph(ps, edges, meta={"algo": "emst"})


class _DSU:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[max(ra, rb)] = min(ra, rb)
        return True


def mst_of_graph(g: GeoGraph) -> GeoGraph:
    """Kruskal on g's edges, ordered by (length, i, j)."""
    ordered = sorted(g.edges, key=lambda e: (g.weight(*e), e))
    dsu = _DSU(g.n)
    keep = [e for e in ordered if dsu.union(*e)]
    if len(keep) != g.n - 1:
        raise ValueError("graph is disconnected; no spanning tree")
    return GeoGraph(g.points, keep, meta={"algo": "mst"})


# ---------------------------------------------------------------- separators

def _tree_adjacency(n: int, edges: Sequence[tuple[int, int]], vertices=None):
    verts = sorted(vertices) if vertices is not None else list(range(n))
    adj = {v: [] for v in verts}
    for u, v in edges:
        if u not in adj or v not in adj:
            raise NotATreeError(f"edge {(u, v)} leaves the vertex set")
        adj[u].append(v)
        adj[v].append(u)
    for v in adj:
        adj[v].sort()
    if len(edges) != len(verts) - 1:
        raise NotATreeError("edge count is not |V| - 1")
    return verts, adj


def _subtree_sizes(verts, adj):
    """Root at the smallest vertex; return (order, parent, size) from one DFS."""
    root = verts[0]
    parent = {root: None}
    order = [root]
    stack = [root]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in parent:
                parent[v] = u
                order.append(v)
                stack.append(v)
    if len(order) != len(verts):
        raise NotATreeError("not connected")
    size = {v: 1 for v in verts}
    for v in reversed(order[1:]):
        size[parent[v]] += size[v]
    return order, parent, size


def _centroid(verts, adj, parent, size):
    n = len(verts)
    for v in verts:
        biggest = n - size[v]
        for c in adj[v]:
            if c != parent[v]:
                biggest = max(biggest, size[c])
        if biggest <= n / 2:
            return v
    raise AssertionError("trees always have a centroid")


def tree_vertex_separator(t: GeoGraph, vertices=None) -> int:
    """Vertex whose removal leaves components of size <= n/2 (smallest such index)."""
    verts, adj = _tree_adjacency(t.n, t.edges, vertices)
    _, parent, size = _subtree_sizes(verts, adj)
    return _centroid(verts, adj, parent, size)


def _edge_separator(verts, adj):
    order, parent, size = _subtree_sizes(verts, adj)
    n = len(verts)
    v = _centroid(verts, adj, parent, size)
    # component behind each neighbour of the centroid; take the largest (smallest index on ties)
    best, best_size = None, -1
    for c in adj[v]:
        s = size[c] if c != parent[v] else n - size[v]
        if s > best_size:
            best, best_size = c, s
    side = _side(adj, best, v)
    return (min(v, best), max(v, best)), side


def _side(adj, start, blocked):
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w != blocked and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def tree_edge_separator(t: GeoGraph, vertices=None) -> tuple[int, int]:
    """Edge from the centroid to its largest branch; both sides then lie in [n/(D+1), n*D/(D+1)]."""
    verts, adj = _tree_adjacency(t.n, t.edges, vertices)
    if len(verts) < 2:
        raise NotATreeError("edge separator needs at least 2 vertices")
    edge, _ = _edge_separator(verts, adj)
    return edge


@dataclass(frozen=True)
class SubtreeSplit:
    assignment: tuple[int, ...]  # vertex -> subtree id
    removed_edges: tuple[tuple[int, int], ...]
    subtree_count: int
    max_degree: int

    def members(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.subtree_count)]
        for v, s in enumerate(self.assignment):
            out[s].append(v)
        return out

    def sizes(self) -> list[int]:
        return [len(m) for m in self.members()]

    def to_json(self) -> dict:
        return {"assignment": list(self.assignment), "removed_edges": [list(e) for e in self.removed_edges]}


def split_into_subtrees(t: GeoGraph, m: int) -> SubtreeSplit:
    """Remove m-1 tree edges so the m resulting subtrees have size O(n/m).

    Repeatedly cuts the largest current subtree at its edge separator (ties:
    subtree with the smallest minimum vertex), first until no subtree exceeds
    (D+1)*n/m, then until there are exactly m subtrees.
    """
    n = t.n
    if m < 1 or m > n:
        raise ValueError(f"need 1 <= m <= n, got m={m}, n={n}")
    verts, adj = _tree_adjacency(n, t.edges)
    delta = max((len(a) for a in adj.values()), default=0)
    # heap of (-size, min vertex, vertex set)
    heap = [(-n, 0, frozenset(verts))]
    removed = []
    while len(heap) < m:
        neg, _, comp = heapq.heappop(heap)
        sub_adj = {v: [w for w in adj[v] if w in comp] for v in comp}
        edge, side = _edge_separator(sorted(comp), sub_adj)
        removed.append(edge)
        other = comp - side
        for part in (side, other):
            heapq.heappush(heap, (-len(part), min(part), frozenset(part)))
        adj[edge[0]].remove(edge[1])
        adj[edge[1]].remove(edge[0])
    parts = sorted((min(c), c) for _, _, c in heap)
    assignment = [0] * n
    for sid, (_, comp) in enumerate(parts):
        for v in comp:
            assignment[v] = sid
    return SubtreeSplit(tuple(assignment), tuple(removed), m, delta)


def representatives(split: SubtreeSplit) -> list[list[int]]:
    """Per subtree, the sorted vertices incident to a removed edge."""
    reps: list[set[int]] = [set() for _ in range(split.subtree_count)]
    for u, v in split.removed_edges:
        reps[split.assignment[u]].add(u)
        reps[split.assignment[v]].add(v)
    return [sorted(r) for r in reps]


def prune_between_representatives(t: GeoGraph, reps: Sequence[int], edges=None) -> list[tuple[int, int]]:
    """Scan tree edges long to short; drop each edge whose two sides both still hold a representative.

    ``edges`` restricts the scan to one subtree of ``t`` (default: all of t's edges).
    Returns the removed edges in removal order.
    """
    tree_edges = list(t.edges if edges is None else edges)
    if len(set(reps)) <= 1:
        return []
    repset = set(reps)
    adj: dict[int, set[int]] = {}
    for u, v in tree_edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    ordered = sorted(tree_edges, key=lambda e: (-t.weight(*e), e))
    removed = []
    for u, v in ordered:
        adj[u].discard(v)
        adj[v].discard(u)
        if _holds_rep(adj, u, repset) and _holds_rep(adj, v, repset):
            removed.append((u, v))
        else:
            adj[u].add(v)
            adj[v].add(u)
    return removed


def _holds_rep(adj, start, repset) -> bool:
    if start in repset:
        return True
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                if w in repset:
                    return True
                seen.add(w)
                stack.append(w)
    return False


def tree_path(t: GeoGraph, a: int, b: int) -> list[int]:
    """Vertex sequence of the unique a-b path in tree t."""
    adj = t.neighbours()
    prev = {a: None}
    stack = [a]
    while stack:
        u = stack.pop()
        if u == b:
            break
        for w in adj[u]:
            if w not in prev:
                prev[w] = u
                stack.append(w)
    if b not in prev:
        raise ValueError(f"{a} and {b} are not connected")
    path = [b]
    while path[-1] != a:
        path.append(prev[path[-1]])
    return path[::-1]


def subtree_size_window(n: int, m: int, delta: int) -> tuple[float, float]:
    return n / ((delta + 1) * m), (delta + 1) * n / m

