import math
import random

import pytest

from twspanner.core_graph import GeoGraph, PointSet, complete_graph
from twspanner.pointgen import random_points
from twspanner.spanners import delaunay
from twspanner.tree_tools import (
    NotATreeError,
    emst,
    mst_of_graph,
    prune_between_representatives,
    representatives,
    split_into_subtrees,
    subtree_size_window,
    tree_edge_separator,
    tree_path,
    tree_vertex_separator,
)


def line_points(n):
    return PointSet([(i, 0) for i in range(n)])


def path_tree(n):
    return GeoGraph(line_points(n), [(i, i + 1) for i in range(n - 1)])


def star_tree(leaves):
    pts = [(0, 0)] + [(math.cos(2 * math.pi * i / leaves), math.sin(2 * math.pi * i / leaves)) for i in range(leaves)]
    return GeoGraph(PointSet(pts), [(0, i) for i in range(1, leaves + 1)])


def random_tree(n, seed):
    rng = random.Random(seed)
    edges = [(rng.randrange(v), v) for v in range(1, n)]
    return GeoGraph(random_points(2, n, seed), edges)


def components_without(t: GeoGraph, removed_vertices=(), removed_edges=()):
    rv, re = set(removed_vertices), {tuple(sorted(e)) for e in removed_edges}
    adj = {v: [] for v in range(t.n) if v not in rv}
    for u, v in t.edges:
        if u in rv or v in rv or (u, v) in re:
            continue
        adj[u].append(v)
        adj[v].append(u)
    seen, out = set(), []
    for s in adj:
        if s in seen:
            continue
        comp, stack = [s], [s]
        seen.add(s)
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        out.append(sorted(comp))
    return out


def kruskal_weight(ps: PointSet) -> float:
    full = complete_graph(ps)
    parent = list(range(len(ps)))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    total = 0.0
    for u, v in sorted(full.edges, key=lambda e: full.weight(*e)):
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            total += full.weight(u, v)
    return total


def test_emst_examples():
    assert emst(PointSet([(0, 0), (1, 0), (2, 0)])).edges == ((0, 1), (1, 2))
    tri = PointSet([(0, 0), (1, 0), (0.5, math.sqrt(3) / 2)])
    g = emst(tri)
    assert len(g.edges) == 2 and g.is_connected()


def test_emst_equilateral_exact_tie():
    # four sides of exactly equal length: ties go to the lexicographically smallest pair
    g = emst(PointSet([(0, 0), (2, 0), (1, 1), (1, -1)]))
    assert g.edges == ((0, 2), (0, 3), (1, 2))


@pytest.mark.parametrize("seed,d", [(s, d) for s in range(5) for d in (2, 3)])
def test_emst_weight_matches_kruskal(seed, d):
    ps = random_points(d, 50, seed)
    g = emst(ps)
    assert len(g.edges) == 49 and g.is_connected()
    assert g.total_weight() == pytest.approx(kruskal_weight(ps), rel=1e-12)
    assert set(g.edges) == set(mst_of_graph(complete_graph(ps)).edges)


def test_mst_of_graph_examples():
    t = random_tree(30, 3)
    assert set(mst_of_graph(t).edges) == set(t.edges)
    sq = PointSet([(0, 0), (1, 0), (1, 1), (0, 3)])
    cyc = GeoGraph(sq, [(0, 1), (1, 2), (2, 3), (0, 3)])
    assert set(mst_of_graph(cyc).edges) == {(0, 1), (1, 2), (2, 3)}
    with pytest.raises(ValueError):
        mst_of_graph(GeoGraph(sq, [(0, 1)]))


@pytest.mark.parametrize("seed", range(4))
def test_delaunay_mst_is_emst(seed):
    ps = random_points(2, 50, seed)
    assert mst_of_graph(delaunay(ps)).total_weight() == pytest.approx(emst(ps).total_weight(), rel=1e-12)


def test_vertex_separator_examples():
    assert tree_vertex_separator(path_tree(5)) == 2
    assert tree_vertex_separator(star_tree(6)) == 0


@pytest.mark.parametrize("seed", range(3))
def test_vertex_separator_random_exhaustive(seed):
    t = random_tree(200, seed)
    c = tree_vertex_separator(t)
    assert max(len(x) for x in components_without(t, removed_vertices=[c])) <= 100
    # the returned vertex is the smallest index with that property
    for v in range(c):
        assert max(len(x) for x in components_without(t, removed_vertices=[v])) > 100


def test_vertex_separator_rejects_non_tree():
    g = GeoGraph(line_points(3), [(0, 1)])
    with pytest.raises(NotATreeError):
        tree_vertex_separator(g)


def test_edge_separator_path8():
    e = tree_edge_separator(path_tree(8))
    sizes = sorted(len(c) for c in components_without(path_tree(8), removed_edges=[e]))
    assert sizes in ([3, 5], [4, 4])
    assert all(8 / 3 <= s <= 16 / 3 for s in sizes)


def test_edge_separator_small():
    two = GeoGraph(line_points(2), [(0, 1)])
    assert tree_edge_separator(two) == (0, 1)
    e = tree_edge_separator(star_tree(4))
    sizes = sorted(len(c) for c in components_without(star_tree(4), removed_edges=[e]))
    assert sizes == [1, 4]


@pytest.mark.parametrize("seed", range(10))
def test_edge_separator_balance(seed):
    t = random_tree(120, seed)
    delta = max(len(a) for a in t.neighbours())
    e = tree_edge_separator(t)
    for c in components_without(t, removed_edges=[e]):
        assert t.n / (delta + 1) - 1e-9 <= len(c) <= t.n * delta / (delta + 1) + 1e-9


def test_split_examples():
    s = split_into_subtrees(path_tree(8), 1)
    assert s.removed_edges == () and s.sizes() == [8]
    s = split_into_subtrees(path_tree(8), 2)
    assert len(s.removed_edges) == 1
    assert all(8 / 6 <= x <= 12 for x in s.sizes())


@pytest.mark.parametrize("seed", range(5))
def test_split_random_window(seed):
    t = emst(random_points(2, 500, seed))
    s = split_into_subtrees(t, 10)
    assert len(s.removed_edges) == 9 and s.subtree_count == 10
    lo, hi = subtree_size_window(500, 10, s.max_degree)
    assert all(lo <= x <= hi for x in s.sizes())
    # every subtree is connected in the tree minus the removed edges
    comps = components_without(t, removed_edges=s.removed_edges)
    assert sorted(map(sorted, s.members())) == sorted(comps)


def test_split_rejects_bad_m():
    with pytest.raises(ValueError):
        split_into_subtrees(path_tree(4), 5)


def test_representatives_are_removed_edge_endpoints():
    t = emst(random_points(2, 100, 2))
    s = split_into_subtrees(t, 6)
    reps = representatives(s)
    assert sorted(v for r in reps for v in r) == sorted({v for e in s.removed_edges for v in e})
    for sid, r in enumerate(reps):
        assert all(s.assignment[v] == sid for v in r)


def test_prune_path_removes_longest():
    pts = PointSet([(0, 0), (1, 0), (4, 0), (6, 0)])  # lengths 1, 3, 2
    t = GeoGraph(pts, [(0, 1), (1, 2), (2, 3)])
    assert prune_between_representatives(t, [0, 3]) == [(1, 2)]
    assert prune_between_representatives(t, [2]) == []
    assert prune_between_representatives(t, []) == []


def test_prune_star_three_reps():
    pts = PointSet([(0, 0), (1, 0), (0, 2), (-3, 0)])
    t = GeoGraph(pts, [(0, 1), (0, 2), (0, 3)])
    removed = prune_between_representatives(t, [1, 2, 3])
    assert removed == [(0, 3), (0, 2)]
    remaining = set(t.edges) - set(removed)
    assert remaining == {(0, 1)}


@pytest.mark.parametrize("seed", range(10))
def test_prune_leaves_one_rep_per_component(seed):
    rng = random.Random(seed)
    t = emst(random_points(2, 80, seed))
    reps = rng.sample(range(80), rng.randint(2, 12))
    removed = prune_between_representatives(t, reps)
    assert len(removed) == len(reps) - 1
    comps = components_without(t, removed_edges=removed)
    for c in comps:
        assert len(set(c) & set(reps)) <= 1


def test_tree_path():
    t = path_tree(6)
    assert tree_path(t, 1, 4) == [1, 2, 3, 4]
    assert tree_path(t, 3, 3) == [3]
