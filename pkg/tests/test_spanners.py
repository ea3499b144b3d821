import math

import numpy as np
import pytest
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import dijkstra
from scipy.spatial import Delaunay as ScipyDelaunay

from twspanner.core_graph import GeoGraph, GeometryError, PointSet, dilation, is_plane_drawing
from twspanner.minor_tw import exact_treewidth
from twspanner.pointgen import circle_points, random_points
from twspanner.predicates import incircle, orient2d
from twspanner.spanners import (
    ParameterError,
    SpannerConfig,
    bounded_tw_spanner,
    bounded_tw_spanner_detailed,
    delaunay,
    greedy_spanner,
    plane_bounded_tw_spanner,
    plane_bounded_tw_spanner_detailed,
    plane_edge_bound,
    plane_subtree_count,
    sorted_pairs,
    subtree_count,
)
from twspanner.tree_tools import emst, mst_of_graph

TRIANGLE = PointSet([(0, 0), (1, 0), (0.5, math.sqrt(3) / 2)])


def greedy_minimality_violations(g: GeoGraph, t: float) -> list:
    """Edges whose endpoints already had a t-path through strictly earlier (shorter) edges."""
    key = {e: (g.weight(*e), e) for e in g.edges}
    ordered = sorted(g.edges, key=key.get)
    bad = []
    for idx, (u, v) in enumerate(ordered):
        earlier = ordered[:idx]
        if earlier:
            i = [a for a, _ in earlier]
            j = [b for _, b in earlier]
            w = [g.weight(a, b) for a, b in earlier]
            mat = coo_matrix((w, (i, j)), shape=(g.n, g.n)).tocsr()
            d = dijkstra(mat, directed=False, indices=u)[v]
        else:
            d = math.inf
        if not d > t * g.weight(u, v):
            bad.append((u, v))
    return bad


def test_sorted_pairs_order():
    ps = PointSet([(0, 0), (2, 0), (1, 0)])
    i, j, length = sorted_pairs(ps)
    assert list(zip(i.tolist(), j.tolist())) == [(0, 2), (1, 2), (0, 1)]


def test_greedy_triangle():
    assert len(greedy_spanner(TRIANGLE, 1.5).edges) == 3
    assert len(greedy_spanner(TRIANGLE, 3).edges) == 2


def test_greedy_rejects_t():
    with pytest.raises(ParameterError):
        greedy_spanner(TRIANGLE, 1.0)


@pytest.mark.parametrize("t", [1.1, 1.5, 2.0])
@pytest.mark.parametrize("seed", range(3))
def test_greedy_contract_and_minimality(t, seed):
    g = greedy_spanner(random_points(2, 60, seed), t)
    assert dilation(g).dilation <= t + 1e-9
    assert greedy_minimality_violations(g, t) == []


def test_greedy_3d():
    g = greedy_spanner(random_points(3, 50, 8), 1.5)
    assert dilation(g).dilation <= 1.5 + 1e-9


# ---------------------------------------------------------------- Delaunay

def scipy_delaunay_edges(ps):
    tri = ScipyDelaunay(ps.coords)
    edges = set()
    for a, b, c in tri.simplices:
        for u, v in ((a, b), (b, c), (a, c)):
            edges.add((int(min(u, v)), int(max(u, v))))
    return edges


def test_delaunay_triangle():
    assert set(delaunay(TRIANGLE).edges) == {(0, 1), (0, 2), (1, 2)}


def test_delaunay_four_points_convex():
    ps = PointSet([(0, 0), (3, 0), (3, 1), (0, 2)])
    g = delaunay(ps)
    hull = {(0, 1), (1, 2), (2, 3), (0, 3)}
    assert hull < set(g.edges) and len(g.edges) == 5
    diag = (set(g.edges) - hull).pop()
    other = [v for v in range(4) if v not in diag]
    a, b = diag
    for c, d in (other, other[::-1]):
        tri = [ps[a], ps[b], ps[c]]
        if orient2d(*tri) < 0:
            tri[0], tri[1] = tri[1], tri[0]
        assert incircle(*tri, ps[d]) <= 0


@pytest.mark.parametrize("seed", range(5))
def test_delaunay_matches_scipy(seed):
    ps = random_points(2, 200, seed)
    assert set(delaunay(ps).edges) == scipy_delaunay_edges(ps)


@pytest.mark.parametrize("seed", range(3))
def test_delaunay_properties(seed):
    ps = random_points(2, 100, seed)
    g = delaunay(ps)
    assert is_plane_drawing(g)
    assert len(g.edges) <= 3 * 100 - 6
    assert set(emst(ps).edges) <= set(g.edges)


@pytest.mark.parametrize("side", [2, 3, 5, 7])
def test_delaunay_degenerate_grid(side):
    # all cells cocircular; still a full triangulation: 3n - 3 - (boundary points) edges
    ps = PointSet([(x, y) for x in range(side) for y in range(side)])
    g = delaunay(ps)
    n, b = side * side, 4 * (side - 1)
    assert len(g.edges) == 3 * n - 3 - b
    assert is_plane_drawing(g)
    assert delaunay(ps).edges == g.edges


def test_delaunay_circle_points():
    g = delaunay(circle_points(16))
    assert len(g.edges) == 2 * 16 - 3 and is_plane_drawing(g)


def test_delaunay_collinear_with_extras():
    ps = PointSet([(0, 0), (1, 0), (2, 0), (3, 0), (1, 1)])
    g = delaunay(ps)
    assert {(0, 1), (1, 2), (2, 3)} <= set(g.edges)
    assert is_plane_drawing(g) and len(g.edges) == 3 * 5 - 3 - 5


def test_delaunay_rejects_degenerate():
    with pytest.raises(GeometryError):
        delaunay(PointSet([(0, 0), (1, 1), (2, 2)]))
    with pytest.raises(GeometryError):
        delaunay(random_points(3, 10, 0))


# ---------------------------------------------------------------- bounded tree-width spanner in R^d

def test_subtree_count():
    assert subtree_count(2, 2, 1.0) == 5
    assert subtree_count(8, 2, 1.0) == 65
    assert subtree_count(2, 3, 1.0) == math.ceil(2 ** 1.5 + 1)


@pytest.mark.parametrize("seed,d", [(0, 2), (1, 2), (2, 3)])
def test_alg1_k1_is_emst(seed, d):
    ps = random_points(d, 80, seed)
    assert bounded_tw_spanner(ps, SpannerConfig(k=1)).edges == emst(ps).edges


def _components(n, edges):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent[find(u)] = find(v)
    return [find(v) for v in range(n)]


@pytest.mark.parametrize("seed,d,k", [(0, 2, 2), (1, 2, 4), (2, 2, 8), (3, 3, 2), (4, 3, 4)])
def test_alg1_structure(seed, d, k):
    ps = random_points(d, 300, seed)
    res = bounded_tw_spanner_detailed(ps, SpannerConfig(k=k))
    assert len(res.split.removed_edges) == res.m - 1
    comp = _components(300, res.forest_edges)
    reps = res.representative_set
    per = {}
    for r in reps:
        per.setdefault(comp[r], []).append(r)
    assert all(len(v) == 1 for v in per.values())
    assert res.graph.is_connected()
    assert set(res.graph.edges) == set(res.forest_edges) | set(res.greedy_edges)


def test_alg1_dilation_order_n_over_m():
    ps = random_points(2, 400, 7)
    res = bounded_tw_spanner_detailed(ps, SpannerConfig(k=4))
    c = dilation(res.graph).dilation * res.m / 400
    assert c <= 5.0


def test_alg1_precondition_and_clamp():
    ps = random_points(2, 50, 0)
    with pytest.raises(ParameterError):
        bounded_tw_spanner(ps, SpannerConfig(k=8))  # 8 > sqrt(50)
    g = bounded_tw_spanner(ps, SpannerConfig(k=7, C=0.5))
    assert g.meta["m_clamped"] and g.meta["m"] == 50
    with pytest.raises(ParameterError):
        SpannerConfig(k=0)
    with pytest.raises(ParameterError):
        SpannerConfig(k=2, t_greedy=2.0)


def test_alg1_small_instances_treewidth_reported():
    for seed in range(5):
        g = bounded_tw_spanner(random_points(2, 18, seed), SpannerConfig(k=2))
        assert g.is_connected()
        assert exact_treewidth(g.to_abstract()) >= 1


# ---------------------------------------------------------------- plane bounded tree-width spanner

def test_plane_counts():
    assert plane_subtree_count(13) == 4
    assert plane_subtree_count(2) == 3
    assert plane_edge_bound(300, 13) == 302


def test_alg2_k1_is_delaunay_mst():
    ps = random_points(2, 100, 3)
    g = plane_bounded_tw_spanner(ps, 1)
    assert g.edges == mst_of_graph(delaunay(ps)).edges
    assert len(g.edges) == 99


@pytest.mark.parametrize("seed", range(3))
def test_alg2_k13(seed):
    ps = random_points(2, 300, seed)
    res = plane_bounded_tw_spanner_detailed(ps, 13)
    g = res.graph
    assert res.split.subtree_count == 4
    assert is_plane_drawing(g)
    assert len(g.edges) <= 302
    assert g.is_connected()
    assert set(g.edges) <= set(res.base.edges)


@pytest.mark.parametrize("seed", range(6))
@pytest.mark.parametrize("k", [2, 3, 4, 13])
def test_alg2_shrunk_treewidth(seed, k):
    ps = random_points(2, 18, seed)
    g = plane_bounded_tw_spanner(ps, k)
    assert exact_treewidth(g.to_abstract()) <= k
    assert len(g.edges) <= plane_edge_bound(18, k)


def test_alg2_connectors_shortest():
    ps = random_points(2, 120, 9)
    res = plane_bounded_tw_spanner_detailed(ps, 13)
    assign = res.split.assignment
    for (a, b), (u, v) in res.connectors.items():
        cands = [e for e in res.base.edges if {assign[e[0]], assign[e[1]]} == {a, b}]
        assert min(cands, key=lambda e: (res.base.weight(*e), e)) == (u, v)


def test_alg2_rejects_large_k():
    with pytest.raises(ParameterError):
        plane_bounded_tw_spanner(random_points(2, 20, 0), 60)
    with pytest.raises(ParameterError):
        plane_bounded_tw_spanner(random_points(3, 20, 0), 2)


def test_alg2_custom_plane_spanner():
    ps = random_points(2, 60, 2)
    g = plane_bounded_tw_spanner(ps, 13, plane_spanner=lambda p: emst(p))
    assert g.edges == emst(ps).edges
    assert np.isfinite(dilation(g).dilation)
