"""Spanner constructions: greedy, bounded tree-width (R^d), Delaunay, plane bounded tree-width."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from twspanner import kernels
from twspanner.core_graph import GeoGraph, GeometryError, PointSet
from twspanner.predicates import incircle, orient2d, strictly_between
from twspanner.tree_tools import (
    SubtreeSplit,
    emst,
    mst_of_graph,
    prune_between_representatives,
    representatives,
    split_into_subtrees,
)


class ParameterError(ValueError):
    """Construction parameter out of its admissible range."""


# ---------------------------------------------------------------- greedy spanner

def sorted_pairs(ps: PointSet):
    """All pairs i < j ordered by (|p_i p_j|, i, j)."""
    n = len(ps)
    i, j = np.triu_indices(n, k=1)
    pts = ps.coords
    lengths = np.sqrt(((pts[i] - pts[j]) ** 2).sum(axis=1))
    order = np.lexsort((j, i, lengths))
    return i[order], j[order], lengths[order]


def greedy_spanner(ps: PointSet, t: float = 1.5) -> GeoGraph:
    """Classical greedy t-spanner: scan pairs by length, add {u,v} iff d_G(u,v) > t|uv|."""
    if not t > 1:
        raise ParameterError(f"greedy spanner needs t > 1, got {t}")
    if len(ps) < 2:
        return GeoGraph(ps, [], meta={"algo": "greedy", "t": t})
    pi, pj, pl = sorted_pairs(ps)
    ei, ej = kernels.greedy_edges(ps.coords, pi, pj, pl, float(t))
    return GeoGraph(ps, zip(ei.tolist(), ej.tolist()), meta={"algo": "greedy", "t": t})


# ---------------------------------------------------------------- Algorithm: bounded tree-width in R^d

@dataclass(frozen=True)
class SpannerConfig:
    k: int
    C: float = 1.0
    t_greedy: float = 1.5

    def __post_init__(self):
        if self.k < 1:
            raise ParameterError("k must be >= 1")
        if not self.C > 0:
            raise ParameterError("C must be positive")
        if not 1 < self.t_greedy <= 1.5:
            raise ParameterError("t_greedy must lie in (1, 3/2]")


def subtree_count(k: int, d: int, C: float) -> int:
    """m = ceil((k/C)^(d/(d-1)) + 1)."""
    return math.ceil((k / C) ** (d / (d - 1)) + 1)


@dataclass(frozen=True)
class BoundedTwResult:
    graph: GeoGraph
    m: int
    m_requested: int
    split: SubtreeSplit | None
    reps: tuple[tuple[int, ...], ...]  # per subtree
    forest_edges: tuple[tuple[int, int], ...]  # E': pruned subtree edges
    greedy_edges: tuple[tuple[int, int], ...]  # E'': greedy spanner on the representatives

    @property
    def representative_set(self) -> list[int]:
        return sorted({r for rs in self.reps for r in rs})


def bounded_tw_spanner_detailed(ps: PointSet, cfg: SpannerConfig) -> BoundedTwResult:
    n, d = len(ps), ps.dim
    k = cfg.k
    if k > n ** (1 - 1 / d) + 1e-9:
        raise ParameterError(f"k={k} exceeds n^(1-1/d) = {n ** (1 - 1 / d):.4g}")
    tree = emst(ps)
    if k == 1:
        g = GeoGraph(ps, tree.edges, meta={"algo": "alg1", "k": 1, "C": cfg.C, "m": 1})
        return BoundedTwResult(g, 1, 1, None, (tuple(range(n)),), tree.edges, ())
    m_req = subtree_count(k, d, cfg.C)
    m = min(m_req, n)
    split = split_into_subtrees(tree, m)
    reps = representatives(split)
    removed = set(split.removed_edges)
    members = split.members()
    sub_edges: list[list[tuple[int, int]]] = [[] for _ in range(m)]
    for e in tree.edges:
        if e not in removed:
            sub_edges[split.assignment[e[0]]].append(e)
    forest = []
    for sid in range(m):
        cut = set(prune_between_representatives(tree, reps[sid], edges=sub_edges[sid]))
        forest += [e for e in sub_edges[sid] if e not in cut]
    rset = sorted({r for rs in reps for r in rs})
    gs = greedy_spanner(ps.subset(rset), cfg.t_greedy) if len(rset) >= 2 else None
    greedy = [(rset[a], rset[b]) for a, b in gs.edges] if gs is not None else []
    meta = {"algo": "alg1", "k": k, "C": cfg.C, "t_greedy": cfg.t_greedy, "m": m,
            "m_requested": m_req, "m_clamped": m != m_req, "representatives": len(rset),
            "subtree_sizes": [len(x) for x in members]}
    g = GeoGraph(ps, forest + greedy, meta=meta)
    return BoundedTwResult(g, m, m_req, split, tuple(tuple(r) for r in reps),
                           tuple(sorted(forest)), tuple(sorted(greedy)))


def bounded_tw_spanner(ps: PointSet, cfg: SpannerConfig) -> GeoGraph:
    """EMST cut into m subtrees, pruned between representatives, joined by a greedy spanner on them."""
    return bounded_tw_spanner_detailed(ps, cfg).graph


# ---------------------------------------------------------------- Delaunay (Bowyer-Watson)

_GHOST = -1


def delaunay(ps: PointSet) -> GeoGraph:
    """Delaunay triangulation by Bowyer-Watson insertion in lexicographic order.

    Outside the hull, "ghost" triangles (hull edge + a vertex at infinity) take
    part in the conflict test, so no bounding super-triangle is needed.
    Cocircular ties are not conflicts, which fixes one triangulation
    deterministically. Predicates are exact.
    """
    if ps.dim != 2:
        raise GeometryError("delaunay needs 2D points")
    n = len(ps)
    if n < 3:
        raise GeometryError("delaunay needs at least 3 points")
    pts = [tuple(map(float, p)) for p in ps.coords]
    order = sorted(range(n), key=lambda i: pts[i])
    j = 2
    while j < n and orient2d(pts[order[0]], pts[order[1]], pts[order[j]]) == 0:
        j += 1
    if j == n:
        raise GeometryError("all points are collinear")

    tris: dict[int, tuple[int, int, int]] = {}
    edge_of: dict[tuple[int, int], int] = {}
    next_id = 0

    def add(a, b, c):
        nonlocal next_id
        if a == _GHOST:
            a, b, c = b, c, a
        elif b == _GHOST:
            a, b, c = c, a, b
        tid = next_id
        next_id += 1
        tris[tid] = (a, b, c)
        edge_of[(a, b)] = tid
        edge_of[(b, c)] = tid
        edge_of[(c, a)] = tid
        return tid

    def remove(tid):
        a, b, c = tris.pop(tid)
        for e in ((a, b), (b, c), (c, a)):
            if edge_of.get(e) == tid:
                del edge_of[e]

    def conflicts(tid, p):
        a, b, c = tris[tid]
        if c == _GHOST:
            o = orient2d(pts[a], pts[b], p)
            return o > 0 or (o == 0 and strictly_between(pts[a], pts[b], p))
        return incircle(pts[a], pts[b], pts[c], p) > 0

    chain, apex = order[:j], order[j]
    ccw = orient2d(pts[chain[0]], pts[chain[1]], pts[apex]) > 0
    for a, b in zip(chain, chain[1:]):
        if ccw:
            add(a, b, apex)
        else:
            add(b, a, apex)
    for (a, b) in list(edge_of):
        if (b, a) not in edge_of:
            add(b, a, _GHOST)
    recent = [t for t, (a, b, c) in tris.items() if c == _GHOST and apex in (a, b)]

    for idx in order[j + 1:]:
        p = pts[idx]
        start = next((t for t in recent if t in tris and conflicts(t, p)), None)
        if start is None:
            start = next(t for t in tris if conflicts(t, p))
        bad = {start}
        stack = [start]
        while stack:
            a, b, c = tris[stack.pop()]
            for e in ((b, a), (c, b), (a, c)):
                nb = edge_of.get(e)
                if nb is not None and nb not in bad and conflicts(nb, p):
                    bad.add(nb)
                    stack.append(nb)
        boundary = []
        for tid in bad:
            a, b, c = tris[tid]
            for e in ((a, b), (b, c), (c, a)):
                if edge_of.get((e[1], e[0])) not in bad:
                    boundary.append(e)
        for tid in bad:
            remove(tid)
        recent = []
        for a, b in boundary:
            tid = add(a, b, idx)
            if _GHOST in (a, b):
                recent.append(tid)

    edges = set()
    for a, b, c in tris.values():
        if c == _GHOST:
            continue
        for u, v in ((a, b), (b, c), (c, a)):
            edges.add((min(u, v), max(u, v)))
    return GeoGraph(ps, edges, meta={"algo": "delaunay"})


# ---------------------------------------------------------------- Algorithm: plane bounded tree-width

def plane_subtree_count(k: int) -> int:
    """m = floor((k-1)^2 / 144) + 3."""
    return (k - 1) ** 2 // 144 + 3


def plane_edge_bound(n: int, k: int) -> int:
    return n + (k - 1) ** 2 // 72


@dataclass(frozen=True)
class PlaneTwResult:
    graph: GeoGraph
    base: GeoGraph  # the plane spanner S
    mst: GeoGraph
    split: SubtreeSplit | None
    connectors: dict = field(default_factory=dict)  # (subtree a, subtree b) -> edge


def plane_bounded_tw_spanner_detailed(
    ps: PointSet, k: int, plane_spanner: Callable[[PointSet], GeoGraph] = delaunay
) -> PlaneTwResult:
    if ps.dim != 2:
        raise ParameterError("plane spanner construction needs 2D points")
    n = len(ps)
    if k < 1 or (n < 3 and k > 1) or (n >= 3 and k > 12 * math.sqrt(n - 3)):
        raise ParameterError(f"need 1 <= k <= 12*sqrt(n-3), got k={k}, n={n}")
    base = plane_spanner(ps)
    tree = mst_of_graph(base)
    if k == 1:
        g = GeoGraph(ps, tree.edges, meta={"algo": "alg2", "k": 1, "m": 1})
        return PlaneTwResult(g, base, tree, None, {})
    m = plane_subtree_count(k)
    split = split_into_subtrees(tree, m)
    removed = set(split.removed_edges)
    edges = [e for e in tree.edges if e not in removed]
    best: dict[tuple[int, int], tuple[float, tuple[int, int]]] = {}
    for u, v in base.edges:
        a, b = split.assignment[u], split.assignment[v]
        if a == b:
            continue
        key = (min(a, b), max(a, b))
        cand = (base.weight(u, v), (u, v))
        if key not in best or cand < best[key]:
            best[key] = cand
    connectors = {key: e for key, (_, e) in sorted(best.items())}
    meta = {"algo": "alg2", "k": k, "m": m, "connectors": len(connectors),
            "edge_bound": plane_edge_bound(n, k)}
    g = GeoGraph(ps, edges + list(connectors.values()), meta=meta)
    return PlaneTwResult(g, base, tree, split, connectors)


def plane_bounded_tw_spanner(ps: PointSet, k: int, plane_spanner=delaunay) -> GeoGraph:
    """MST of a plane spanner cut into m subtrees, plus the shortest spanner edge between each adjacent pair."""
    return plane_bounded_tw_spanner_detailed(ps, k, plane_spanner).graph
