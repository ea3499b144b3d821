"""Graph minors and tree-width: contraction, minor-3-core, exact and heuristic tree decompositions."""
from __future__ import annotations

import heapq
import json
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from twspanner import kernels

EXACT_LIMIT = 20


class DecompositionError(ValueError):
    """Malformed tree decomposition (the node graph is not a tree)."""


@dataclass(frozen=True)
class AbstractGraph:
    """Simple undirected unweighted graph on vertices 0..n-1, adjacency as sorted tuples."""

    n: int
    adj: tuple[tuple[int, ...], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "AbstractGraph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {(u, v)} out of range")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    @classmethod
    def from_sets(cls, nbrs: Sequence[Iterable[int]]) -> "AbstractGraph":
        return cls(len(nbrs), tuple(tuple(sorted(s)) for s in nbrs))

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def induced(self, vertices: Sequence[int]) -> "AbstractGraph":
        index = {v: i for i, v in enumerate(vertices)}
        return AbstractGraph.from_edges(
            len(vertices),
            [(index[u], index[v]) for u, v in self.edges if u in index and v in index],
        )

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp, stack = [], [s]
            while stack:
                u = stack.pop()
                comp.append(u)
                for v in self.adj[u]:
                    if not seen[v]:
                        seen[v] = True
                        stack.append(v)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def has_cycle(self) -> bool:
        return self.edge_count > self.n - len(self.components())

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, obj: dict) -> "AbstractGraph":
        return cls.from_edges(int(obj["n"]), obj["edges"])

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), separators=(",", ":")) + "\n")

    @classmethod
    def load(cls, path) -> "AbstractGraph":
        return cls.from_json(json.loads(Path(path).read_text()))


# ---------------------------------------------------------------- contraction & minor-3-core

def contract(g: AbstractGraph, u: int, v: int) -> AbstractGraph:
    """Contract u into its neighbour v: u disappears, its other neighbours attach to v.

    Vertex labels above u shift down by one.
    """
    if not g.has_edge(u, v):
        raise ValueError(f"{u} and {v} are not adjacent")
    nbrs = [set(a) for a in g.adj]
    for w in nbrs[u]:
        nbrs[w].discard(u)
        if w != v:
            nbrs[w].add(v)
            nbrs[v].add(w)
    keep = [x for x in range(g.n) if x != u]
    index = {x: i for i, x in enumerate(keep)}
    return AbstractGraph.from_sets([{index[y] for y in nbrs[x]} for x in keep])


@dataclass(frozen=True)
class Minor3CoreResult:
    core: AbstractGraph
    labels: tuple[int, ...]  # core vertex i is input vertex labels[i]
    trace: tuple[tuple[int, int | None], ...]  # (vertex, target) or (vertex, None) for deletion

    @property
    def empty(self) -> bool:
        return self.core.n == 0


def minor3core(g: AbstractGraph, rng: random.Random | None = None) -> Minor3CoreResult:
    """Contract degree-<=2 vertices and delete isolated ones until neither rule applies.

    Default order: lowest-index qualifying vertex first, contracted into its
    lowest-index neighbour. With ``rng`` both choices are random instead.
    """
    nbrs = [set(a) for a in g.adj]
    alive = [True] * g.n
    trace: list[tuple[int, int | None]] = []
    if rng is None:
        heap = [v for v in range(g.n) if len(nbrs[v]) <= 2]
        heapq.heapify(heap)

        def pop():
            while heap:
                v = heapq.heappop(heap)
                if alive[v] and len(nbrs[v]) <= 2:
                    return v
            return None

        def push(v):
            heapq.heappush(heap, v)

        def pick_target(v):
            return min(nbrs[v])
    else:
        pending = {v for v in range(g.n) if len(nbrs[v]) <= 2}

        def pop():
            live = sorted(v for v in pending if alive[v] and len(nbrs[v]) <= 2)
            pending.clear()
            pending.update(live)
            if not live:
                return None
            v = rng.choice(live)
            pending.discard(v)
            return v

        def push(v):
            pending.add(v)

        def pick_target(v):
            return rng.choice(sorted(nbrs[v]))

    while (v := pop()) is not None:
        alive[v] = False
        if not nbrs[v]:
            trace.append((v, None))
            continue
        t = pick_target(v)
        trace.append((v, t))
        for w in nbrs[v]:
            nbrs[w].discard(v)
            if w != t:
                nbrs[w].add(t)
                nbrs[t].add(w)
        for w in nbrs[v] | {t}:
            if len(nbrs[w]) <= 2:
                push(w)
        nbrs[v] = set()
    labels = tuple(x for x in range(g.n) if alive[x])
    index = {x: i for i, x in enumerate(labels)}
    core = AbstractGraph.from_sets([{index[y] for y in nbrs[x]} for x in labels])
    return Minor3CoreResult(core, labels, tuple(trace))


def replay_trace(g: AbstractGraph, trace: Iterable[tuple[int, int | None]]) -> Minor3CoreResult:
    """Apply a contraction trace (in input labels) and return the resulting minor."""
    nbrs = [set(a) for a in g.adj]
    alive = [True] * g.n
    for v, t in trace:
        if not alive[v]:
            raise ValueError(f"vertex {v} already removed")
        if t is None:
            if nbrs[v]:
                raise ValueError(f"cannot delete non-isolated vertex {v}")
        else:
            if t not in nbrs[v]:
                raise ValueError(f"{v} is not adjacent to {t}")
            for w in nbrs[v]:
                nbrs[w].discard(v)
                if w != t:
                    nbrs[w].add(t)
                    nbrs[t].add(w)
        alive[v] = False
        nbrs[v] = set()
    labels = tuple(x for x in range(g.n) if alive[x])
    index = {x: i for i, x in enumerate(labels)}
    core = AbstractGraph.from_sets([{index[y] for y in nbrs[x]} for x in labels])
    return Minor3CoreResult(core, labels, tuple(trace))


# ---------------------------------------------------------------- tree decompositions

@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[frozenset[int], ...]
    tree_edges: tuple[tuple[int, int], ...]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def to_json(self) -> dict:
        return {"bags": [sorted(b) for b in self.bags], "tree_edges": [list(e) for e in self.tree_edges]}

    @classmethod
    def from_json(cls, obj: dict) -> "TreeDecomposition":
        return cls(tuple(frozenset(b) for b in obj["bags"]),
                   tuple((int(a), int(b)) for a, b in obj["tree_edges"]))

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), separators=(",", ":")) + "\n")

    @classmethod
    def load(cls, path) -> "TreeDecomposition":
        return cls.from_json(json.loads(Path(path).read_text()))


def validate_decomposition(g: AbstractGraph, td: TreeDecomposition) -> tuple[bool, int]:
    """Check the three tree-decomposition conditions; returns (valid, width).

    Raises DecompositionError if the node graph is not a tree.
    """
    k = len(td.bags)
    width = td.width
    if k == 0:
        if g.n == 0:
            return True, width
        raise DecompositionError("no bags")
    tree = [[] for _ in range(k)]
    for a, b in td.tree_edges:
        if not (0 <= a < k and 0 <= b < k) or a == b:
            raise DecompositionError(f"bad tree edge {(a, b)}")
        tree[a].append(b)
        tree[b].append(a)
    if len(td.tree_edges) != k - 1 or not _connected(tree, range(k)):
        raise DecompositionError("decomposition nodes do not form a tree")
    # 1. bags cover V
    covered = set().union(*td.bags)
    if covered != set(range(g.n)):
        return False, width
    # 2. every edge inside some bag
    for u, v in g.edges:
        if not any(u in b and v in b for b in td.bags):
            return False, width
    # 3. occurrences of each vertex are connected in the tree
    occ: dict[int, list[int]] = {}
    for i, b in enumerate(td.bags):
        for v in b:
            occ.setdefault(v, []).append(i)
    for nodes in occ.values():
        if not _connected(tree, nodes):
            return False, width
    return True, width


def _connected(tree, nodes) -> bool:
    nodes = set(nodes)
    if not nodes:
        return True
    start = next(iter(nodes))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in tree[x]:
            if y in nodes and y not in seen:
                seen.add(y)
                stack.append(y)
    return seen == nodes


def decomposition_from_ordering(g: AbstractGraph, order: Sequence[int]) -> TreeDecomposition:
    """Elimination game: bag(v) = v + its later neighbours in the filled graph."""
    if g.n == 0:
        return TreeDecomposition((), ())
    pos = {v: i for i, v in enumerate(order)}
    nbrs = [set(a) for a in g.adj]
    bags = []
    parent_vertex = []
    for v in order:
        later = {w for w in nbrs[v] if pos[w] > pos[v]}
        bags.append(frozenset(later | {v}))
        for a in later:
            nbrs[a] |= later - {a}
        parent_vertex.append(min(later, key=pos.__getitem__) if later else None)
    edges = []
    roots = []
    for i, p in enumerate(parent_vertex):
        if p is None:
            roots.append(i)
        else:
            edges.append((i, pos[p]))
    # chain the roots of separate components into one tree
    edges += [(a, b) for a, b in zip(roots, roots[1:])]
    return TreeDecomposition(tuple(bags), tuple(edges))


def _adj_masks(g: AbstractGraph) -> list[int]:
    return [sum(1 << w for w in a) for a in g.adj]


def exact_treewidth(g: AbstractGraph, with_decomposition: bool = False):
    """Exact tree-width by subset DP over elimination orderings (n <= 20).

    Returns the width, or (width, TreeDecomposition) when ``with_decomposition``.
    """
    n = g.n
    if n > EXACT_LIMIT:
        raise ValueError(f"exact tree-width limited to {EXACT_LIMIT} vertices, got {n}")
    if n == 0:
        return (-1, TreeDecomposition((), ())) if with_decomposition else -1
    masks = _adj_masks(g)
    table = kernels.tw_table(masks, n)
    full = (1 << n) - 1
    width = int(table[full])
    if not with_decomposition:
        return width
    # Walk the table back from V: the vertex eliminated last is chosen first.
    from twspanner._pykernels import q_size

    reverse = []
    s = full
    while s:
        for v in range(n):
            bit = 1 << v
            if s & bit:
                prev = s ^ bit
                if max(int(table[prev]), q_size(masks, prev, v)) == table[s]:
                    reverse.append(v)
                    s = prev
                    break
    order = reverse[::-1]
    td = decomposition_from_ordering(g, order)
    return width, td


def min_fill_ordering(g: AbstractGraph) -> list[int]:
    """Greedy min-fill elimination ordering (ties: smaller degree, then smaller index)."""
    nbrs = [set(a) for a in g.adj]
    remaining = set(range(g.n))
    order = []

    def fill(v):
        ns = list(nbrs[v])
        return sum(1 for i in range(len(ns)) for j in range(i + 1, len(ns)) if ns[j] not in nbrs[ns[i]])

    while remaining:
        v = min(remaining, key=lambda x: (fill(x), len(nbrs[x]), x))
        order.append(v)
        ns = nbrs[v]
        for a in ns:
            nbrs[a] |= ns - {a}
            nbrs[a].discard(v)
        remaining.discard(v)
        nbrs[v] = set()
    return order


def heuristic_treewidth_upper(g: AbstractGraph) -> tuple[int, TreeDecomposition]:
    """Upper bound on tree-width from a min-fill elimination ordering, with its decomposition."""
    td = decomposition_from_ordering(g, min_fill_ordering(g))
    return td.width, td


@dataclass(frozen=True)
class TreewidthEstimate:
    value: int
    exact: bool
    method: str

    def label(self) -> str:
        return str(self.value) if self.exact else f"<= {self.value}"


def treewidth_estimate(g: AbstractGraph, limit: int = EXACT_LIMIT) -> TreewidthEstimate:
    """Tree-width via the minor-3-core: exact when the core has at most ``limit`` vertices.

    An empty core means no K4 minor, so the width is 0, 1 or 2 by edge/cycle
    checks. A non-empty core has minimum degree 3, hence width >= 3, which the
    core then shares with the whole graph.
    """
    if g.n <= limit:
        return TreewidthEstimate(exact_treewidth(g), True, "exact")
    res = minor3core(g)
    if res.empty:
        value = 2 if g.has_cycle() else (1 if g.edge_count else 0)
        return TreewidthEstimate(value, True, "empty-core")
    if res.core.n <= limit:
        return TreewidthEstimate(exact_treewidth(res.core), True, "exact-core")
    return TreewidthEstimate(heuristic_treewidth_upper(res.core)[0], False, "min-fill-core")


# ---------------------------------------------------------------- isomorphism

def degree_invariant(g: AbstractGraph) -> tuple:
    """Cheap isomorphism invariant: size, order and sorted (degree, sorted neighbour degrees)."""
    deg = g.degrees()
    return (g.n, g.edge_count, tuple(sorted((deg[v], tuple(sorted(deg[w] for w in g.adj[v])))
                                            for v in range(g.n))))


def is_isomorphic(g: AbstractGraph, h: AbstractGraph) -> bool:
    """Backtracking isomorphism test; intended for small graphs (n <= ~12)."""
    if degree_invariant(g) != degree_invariant(h):
        return False
    n = g.n
    gd, hd = g.degrees(), h.degrees()
    order = sorted(range(n), key=lambda v: (-gd[v], v))
    gset = [set(a) for a in g.adj]
    hset = [set(a) for a in h.adj]
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def extend(i: int) -> bool:
        if i == n:
            return True
        v = order[i]
        for w in range(n):
            if w in used or hd[w] != gd[v]:
                continue
            if all((u in gset[v]) == (mapping[u] in hset[w]) for u in mapping):
                mapping[v] = w
                used.add(w)
                if extend(i + 1):
                    return True
                del mapping[v]
                used.discard(w)
        return False

    return extend(0)
