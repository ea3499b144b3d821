"""Points, geometric graphs, shortest paths and the exact dilation oracle."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from twspanner import kernels
from twspanner.predicates import segments_conflict


class GeometryError(ValueError):
    """Invalid geometric input (dimension mismatch, duplicates, degeneracy)."""


def distance(p: Sequence[float], q: Sequence[float]) -> float:
    if len(p) != len(q):
        raise GeometryError(f"dimension mismatch: {len(p)} vs {len(q)}")
    return math.dist(p, q)


class PointSet:
    """Ordered, duplicate-free list of points in R^d. Immutable."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        arr = np.array(coords, dtype=np.float64)
        if arr.ndim == 1 and arr.size == 0:
            raise GeometryError("empty point set")
        if arr.ndim != 2 or arr.shape[1] < 1:
            raise GeometryError("points must form an (n, d) array with d >= 1")
        if not np.all(np.isfinite(arr)):
            raise GeometryError("coordinates must be finite")
        # exact duplicate check
        if len(np.unique(arr, axis=0)) != len(arr):
            raise GeometryError("duplicate points")
        arr.setflags(write=False)
        self.coords = arr

    @property
    def dim(self) -> int:
        return self.coords.shape[1]

    def __len__(self) -> int:
        return self.coords.shape[0]

    def __getitem__(self, i):
        return self.coords[i]

    def __eq__(self, other):
        return isinstance(other, PointSet) and np.array_equal(self.coords, other.coords)

    def __hash__(self):
        return hash(self.coords.tobytes())

    def __repr__(self):
        return f"PointSet(n={len(self)}, dim={self.dim})"

    def dist(self, i: int, j: int) -> float:
        return math.dist(self.coords[i], self.coords[j])

    def subset(self, indices: Sequence[int]) -> "PointSet":
        return PointSet(self.coords[list(indices)])

    # -- point-set file: "d n" header then one point per line
    def dumps(self) -> str:
        lines = [f"{self.dim} {len(self)}"]
        lines += [" ".join(repr(float(c)) for c in row) for row in self.coords]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "PointSet":
        tokens = text.split()
        if len(tokens) < 2:
            raise GeometryError("point-set file needs a 'd n' header")
        d, n = int(tokens[0]), int(tokens[1])
        values = [float(x) for x in tokens[2:]]
        if len(values) != d * n:
            raise GeometryError(f"expected {d * n} coordinates, found {len(values)}")
        return cls(np.array(values).reshape(n, d))

    def save(self, path) -> None:
        Path(path).write_text(self.dumps())

    @classmethod
    def load(cls, path) -> "PointSet":
        return cls.loads(Path(path).read_text())


def _normalise_edges(n: int, edges: Iterable[Sequence[int]]) -> tuple[tuple[int, int], ...]:
    out = set()
    for e in edges:
        i, j = int(e[0]), int(e[1])
        if i == j:
            raise GeometryError(f"self-loop at {i}")
        if not (0 <= i < n and 0 <= j < n):
            raise GeometryError(f"edge {(i, j)} out of range for {n} points")
        out.add((min(i, j), max(i, j)))
    return tuple(sorted(out))


@dataclass(frozen=True)
class GeoGraph:
    """Undirected graph on a PointSet; the weight of {i, j} is |p_i p_j|."""

    points: PointSet
    edges: tuple[tuple[int, int], ...]
    meta: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __init__(self, points: PointSet, edges: Iterable[Sequence[int]] = (), meta=None):
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "edges", _normalise_edges(len(points), edges))
        object.__setattr__(self, "meta", dict(meta or {}))

    @property
    def n(self) -> int:
        return len(self.points)

    def weight(self, i: int, j: int) -> float:
        return self.points.dist(i, j)

    def total_weight(self) -> float:
        return math.fsum(self.weight(i, j) for i, j in self.edges)

    def neighbours(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return adj

    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def csr(self):
        """CSR arrays (indptr, indices, weights), arcs sorted by target within each row."""
        n = self.n
        if not self.edges:
            return np.zeros(n + 1, np.int64), np.zeros(0, np.int64), np.zeros(0, np.float64)
        e = np.array(self.edges, dtype=np.int64)
        src = np.concatenate([e[:, 0], e[:, 1]])
        dst = np.concatenate([e[:, 1], e[:, 0]])
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
        pts = self.points.coords
        w = np.sqrt(((pts[src] - pts[dst]) ** 2).sum(axis=1))
        indptr = np.zeros(n + 1, np.int64)
        np.add.at(indptr, src + 1, 1)
        return np.cumsum(indptr), dst, w

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        adj = self.neighbours()
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == self.n

    def to_abstract(self):
        from twspanner.minor_tw import AbstractGraph

        return AbstractGraph.from_edges(self.n, self.edges)

    # -- graph file: {"dim", "points", "edges"} with sorted i < j pairs
    def to_json(self) -> dict:
        return {
            "dim": self.points.dim,
            "points": self.points.coords.tolist(),
            "edges": [list(e) for e in self.edges],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":")) + "\n"

    @classmethod
    def from_json(cls, obj: dict) -> "GeoGraph":
        pts = PointSet(obj["points"])
        if pts.dim != int(obj["dim"]):
            raise GeometryError("dim field disagrees with point coordinates")
        return cls(pts, obj["edges"])

    def save(self, path) -> None:
        Path(path).write_text(self.dumps())

    @classmethod
    def load(cls, path) -> "GeoGraph":
        return cls.from_json(json.loads(Path(path).read_text()))


def complete_graph(ps: PointSet) -> GeoGraph:
    n = len(ps)
    return GeoGraph(ps, [(i, j) for i in range(n) for j in range(i + 1, n)])


def shortest_paths_from(g: GeoGraph, source: int) -> np.ndarray:
    """Exact Dijkstra distances from ``source``; ``inf`` for unreachable vertices."""
    if not 0 <= source < g.n:
        raise IndexError(f"source {source} out of range")
    indptr, indices, weights = g.csr()
    return kernels.sssp(indptr, indices, weights, source)


@dataclass(frozen=True)
class DilationReport:
    dilation: float
    witness: tuple[int, int]
    connected: bool
    pairs: int
    mean_ratio: float

    def to_json(self) -> dict:
        return {
            "dilation": self.dilation if math.isfinite(self.dilation) else "inf",
            "witness": list(self.witness),
            "connected": self.connected,
            "pairs": self.pairs,
            "mean_ratio": self.mean_ratio,
        }


def dilation(g: GeoGraph) -> DilationReport:
    """Maximum over all point pairs of graph distance / Euclidean distance.

    The witness is the lexicographically first pair attaining the maximum; for a
    disconnected graph it is the first unreachable pair and the dilation is inf.
    """
    if g.n < 2:
        raise GeometryError("dilation needs at least 2 points")
    indptr, indices, weights = g.csr()
    best, i, j, connected, total, count = kernels.dilation_scan(
        indptr, indices, weights, g.points.coords
    )
    mean = total / count if count else math.nan
    return DilationReport(float(best), (int(i), int(j)), bool(connected), int(count), mean)


def max_degree(g: GeoGraph) -> int:
    if not g.edges:
        return 0
    deg = np.bincount(np.array(g.edges).ravel(), minlength=g.n)
    return int(deg.max())


def is_plane_drawing(g: GeoGraph) -> bool:
    """True iff no two straight-line edges meet except at a shared endpoint."""
    if g.points.dim != 2:
        raise GeometryError("plane-drawing check needs 2D points")
    m = len(g.edges)
    if m < 2:
        return True
    pts = g.points.coords
    e = np.array(g.edges)
    a, b = pts[e[:, 0]], pts[e[:, 1]]
    lo = np.minimum(a, b)
    hi = np.maximum(a, b)
    # bounding-box prefilter, then exact test on the surviving pairs
    for i in range(m - 1):
        j = np.arange(i + 1, m)
        overlap = np.all(lo[j] <= hi[i], axis=1) & np.all(hi[j] >= lo[i], axis=1)
        for k in j[overlap]:
            if segments_conflict(a[i], b[i], a[k], b[k]):
                return False
    return True
