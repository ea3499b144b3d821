import random

import numpy as np
import pytest
from hypothesis import settings

from twspanner.minor_tw import AbstractGraph

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def random_connected_graph(n: int, extra: int, rng: random.Random) -> AbstractGraph:
    """Random spanning tree on n vertices plus ``extra`` further distinct edges."""
    edges = set()
    for v in range(1, n):
        u = rng.randrange(v)
        edges.add((u, v))
    possible = n * (n - 1) // 2
    extra = min(extra, possible - len(edges))
    while extra > 0:
        a, b = rng.sample(range(n), 2)
        e = (min(a, b), max(a, b))
        if e not in edges:
            edges.add(e)
            extra -= 1
    return AbstractGraph.from_edges(n, edges)


def random_gnp(n: int, p: float, rng: random.Random) -> AbstractGraph:
    return AbstractGraph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


def grid_abstract(rows: int, cols: int) -> AbstractGraph:
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return AbstractGraph.from_edges(rows * cols, edges)


def clique(n: int) -> AbstractGraph:
    return AbstractGraph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle(n: int) -> AbstractGraph:
    return AbstractGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> AbstractGraph:
    return AbstractGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def to_networkx(g: AbstractGraph):
    import networkx as nx

    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def scipy_all_pairs(geo):
    """All-pairs distances of a GeoGraph via scipy's csgraph Dijkstra (independent oracle)."""
    from scipy.sparse import coo_matrix
    from scipy.sparse.csgraph import dijkstra

    n = geo.n
    if not geo.edges:
        out = np.full((n, n), np.inf)
        np.fill_diagonal(out, 0.0)
        return out
    i = np.array([e[0] for e in geo.edges])
    j = np.array([e[1] for e in geo.edges])
    w = np.linalg.norm(geo.points.coords[i] - geo.points.coords[j], axis=1)
    mat = coo_matrix((w, (i, j)), shape=(n, n)).tocsr()
    return dijkstra(mat, directed=False)


def brute_dilation(geo) -> float:
    dist = scipy_all_pairs(geo)
    pts = geo.points.coords
    eu = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=2)
    iu = np.triu_indices(geo.n, k=1)
    return float(np.max(dist[iu] / eu[iu]))


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
