"""Point-set and reference-graph generators."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from twspanner.core_graph import GeoGraph, GeometryError, PointSet
from twspanner.predicates import orient2d


class InfeasibleError(ValueError):
    """Parameters admit no valid construction."""


def random_points(d: int, n: int, seed: int, box: float = 1.0) -> PointSet:
    """n distinct points uniform in [0, box]^d; exact duplicates are resampled."""
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    rng = np.random.default_rng(seed)
    pts = rng.uniform(0.0, box, size=(n, d))
    while True:
        _, first = np.unique(pts, axis=0, return_index=True)
        if len(first) == n:
            return PointSet(pts)
        dup = np.setdiff1d(np.arange(n), first)
        pts[dup] = rng.uniform(0.0, box, size=(len(dup), d))


def _snap(x: float) -> float:
    return 0.0 if abs(x) < 1e-15 else x


def circle_points(n: int) -> PointSet:
    """p_i = (sin(2 pi i/n), cos(2 pi i/n)): n equally spaced unit-circle points starting at (0, 1)."""
    if n < 3:
        raise ValueError("circle_points needs n >= 3")
    pts = [(_snap(math.sin(2 * math.pi * i / n)), _snap(math.cos(2 * math.pi * i / n)))
           for i in range(n)]
    return PointSet(pts)


def sawtooth_order(n: int) -> list[int]:
    """Visiting order p_0, p_{n-1}, p_1, p_{n-2}, ... of the sawtooth path."""
    order = []
    lo, hi = 0, n - 1
    while lo <= hi:
        order.append(lo)
        if hi != lo:
            order.append(hi)
        lo += 1
        hi -= 1
    return order


def sawtooth_spanner(n: int) -> GeoGraph:
    """Hamiltonian path zig-zagging across the circle; a tree spanner of dilation <= 1/sin(pi/(2n))."""
    order = sawtooth_order(n)
    return GeoGraph(circle_points(n), list(zip(order, order[1:])), meta={"algo": "sawtooth"})


# ---------------------------------------------------------------- grid-like set

EdgeCount = Literal["exact", "loose"]


def side_param_for(d: int, k: int) -> int:
    """h = ceil((9d/2 * (k+2))^(1/(d-1)) - 1), computed exactly in integers."""
    if d < 2 or k < 1:
        raise ValueError("need d >= 2 and k >= 1")
    target = 9 * d * (k + 2)  # smallest s with 2 * s^(d-1) >= target, then h = s - 1
    s = max(1, int(round((target / 2) ** (1 / (d - 1)))) - 2)
    while 2 * s ** (d - 1) < target:
        s += 1
    while s > 1 and 2 * (s - 1) ** (d - 1) >= target:
        s -= 1
    return s - 1


def grid_edge_count(d: int, h: int, mode: EdgeCount = "exact") -> int:
    """Edges of the (h+1)^d grid; ``loose`` gives the looser closed form d(h+1)^d + d(h+1)^(d-1)."""
    if mode == "exact":
        return d * h * (h + 1) ** (d - 1)
    if mode == "loose":
        return d * (h + 1) ** d + d * (h + 1) ** (d - 1)
    raise ValueError(f"unknown edge-count mode {mode!r}")


def grid_like_size(d: int, h: int, m: int) -> int:
    return d * (h * m + 1) * (h + 1) ** (d - 1) - (d - 1) * (h + 1) ** d


def max_feasible_k(d: int, n: int) -> float:
    """Feasibility bound on k for the grid-like construction: n^((d-1)/d) * (5d)^(1/d - 2)."""
    return n ** ((d - 1) / d) * (5 * d) ** (1 / d - 2)


@dataclass(frozen=True)
class GridLikeParams:
    d: int
    n: int | None = None
    h: int | None = None
    m: int | None = None
    k: int | None = None
    edge_count: EdgeCount = "exact"

    def resolve(self) -> tuple[int, int]:
        """Return (h, m), deriving h from k and m from n when not given directly."""
        if self.d < 2:
            raise ValueError("grid-like sets need d >= 2")
        h = self.h
        if h is None:
            if self.k is None:
                raise ValueError("give h or k")
            h = side_param_for(self.d, self.k)
        if h < 1:
            raise ValueError("h must be >= 1")
        m = self.m
        if m is None:
            if self.n is None:
                raise ValueError("give n or m")
            m = self.n // grid_edge_count(self.d, h, self.edge_count)
        if m < 1:
            bound = max_feasible_k(self.d, self.n) if self.n else float("nan")
            raise InfeasibleError(
                f"n={self.n} too small for an ({h}+1)^{self.d} grid (m={m}); "
                f"need k <= n^((d-1)/d) * (5d)^(1/d-2) = {bound:.4g}"
            )
        return h, m


@dataclass(frozen=True)
class GridLikeSet:
    points: PointSet
    grid_point_indices: tuple[int, ...]
    neighbour_pairs: tuple[tuple[int, int], ...]
    h: int
    m: int
    meta: dict = field(default_factory=dict, compare=False)


def grid_like_set(params: GridLikeParams) -> GridLikeSet:
    """Collinear runs of unit-spaced points tracing every edge of the (h+1)^d grid scaled by m."""
    d = params.d
    h, m = params.resolve()
    pts = set()
    for axis in range(d):
        for others in itertools.product(range(h + 1), repeat=d - 1):
            for x in range(h * m + 1):
                p = [j * m for j in others]
                p.insert(axis, x)
                pts.add(tuple(p))
    ordered = sorted(pts)
    index = {p: i for i, p in enumerate(ordered)}
    grid = [index[tuple(j * m for j in js)] for js in itertools.product(range(h + 1), repeat=d)]
    pairs = []
    for js in itertools.product(range(h + 1), repeat=d):
        for axis in range(d):
            if js[axis] < h:
                nb = list(js)
                nb[axis] += 1
                a = index[tuple(j * m for j in js)]
                b = index[tuple(j * m for j in nb)]
                pairs.append((min(a, b), max(a, b)))
    meta = {"d": d, "h": h, "m": m, "n": params.n, "k": params.k,
            "edge_count": params.edge_count, "size": len(ordered),
            "grid_tw_lower_bound": grid_treewidth_lower_bound(d, h + 1)}
    return GridLikeSet(PointSet(ordered), tuple(grid), tuple(sorted(pairs)), h, m, meta)


def grid_treewidth_lower_bound(d: int, s: int) -> float:
    """Reference value 2/(9d) * s^(d-1) - 1 for the s^d grid (vacuous for small s)."""
    return 2.0 / (9 * d) * s ** (d - 1) - 1


def grid_graph(d: int, s: int):
    """The s^d grid as an AbstractGraph; vertex index is the mixed-radix code of its coordinates."""
    from twspanner.minor_tw import AbstractGraph

    if s < 2 or d < 1:
        raise ValueError("grid_graph needs s >= 2 and d >= 1")
    edges = []
    for idx in range(s ** d):
        stride = 1
        for _ in range(d):
            if (idx // stride) % s < s - 1:
                edges.append((idx, idx + stride))
            stride *= s
    return AbstractGraph.from_edges(s ** d, edges)


def convex_hull(ps: PointSet) -> list[int]:
    """Hull vertices counterclockwise (collinear boundary points dropped), starting at the smallest index."""
    if ps.dim != 2:
        raise GeometryError("convex_hull needs 2D points")
    n = len(ps)
    if n < 3:
        raise GeometryError("convex_hull needs at least 3 points")
    pts = ps.coords
    order = sorted(range(n), key=lambda i: (pts[i][0], pts[i][1]))

    def chain(seq):
        out: list[int] = []
        for i in seq:
            while len(out) >= 2 and orient2d(pts[out[-2]], pts[out[-1]], pts[i]) <= 0:
                out.pop()
            out.append(i)
        return out

    lower = chain(order)
    upper = chain(reversed(order))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise GeometryError("all points are collinear")
    start = hull.index(min(hull))
    return hull[start:] + hull[:start]
