from __future__ import annotations

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from coarse_menger.errors import InputError
from coarse_menger.graph import (INF, Graph, ball, bfs_distances, check_path, dist, induced_components,
                                 is_path, shortest_path, subpath)

import _oracles as O


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, edges)


def path_graph(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def test_dist_examples():
    assert dist(path_graph(4), {0}, {3}) == 3
    assert dist(cycle(5), {2}, {2}) == 0
    assert dist(Graph(4, [(0, 1), (2, 3)]), {0}, {2}) == INF


def test_dist_empty_sets_are_infinite():
    g = path_graph(3)
    assert dist(g, set(), {1}) == INF
    assert dist(g, {1}, []) == INF


def test_dist_rejects_bad_vertex():
    with pytest.raises(InputError):
        dist(path_graph(3), {5}, {0})


def test_ball_examples():
    assert ball(path_graph(4), {0}, 1) == {0, 1}
    assert ball(cycle(6), {0, 3}, 0) == {0, 3}
    assert ball(cycle(5), {0}, 2) == set(range(5))


def test_induced_components_examples():
    assert induced_components(path_graph(5), {0, 1, 3, 4}) == [{0, 1}, {3, 4}]
    assert induced_components(path_graph(5), set()) == []
    k4 = Graph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])
    assert induced_components(k4, range(4)) == [set(range(4))]


def test_subpath_examples():
    p = (0, 1, 2, 3)
    assert subpath(p, 1, 3) == (1, 2, 3)
    assert subpath(p, 2, 2) == (2,)
    assert subpath(p, 3, 1) == (3, 2, 1)
    with pytest.raises(InputError):
        subpath(p, 0, 9)


def test_graph_validation():
    with pytest.raises(InputError):
        Graph(2, [(0, 0)])
    with pytest.raises(InputError):
        Graph(2, [(0, 2)])
    with pytest.raises(InputError):
        Graph(-1)
    g = Graph(3, [(0, 1), (1, 0), (1, 2)])
    assert g.m == 2 and g.edges() == [(0, 1), (1, 2)]
    with pytest.raises(InputError):
        Graph.from_adjacency([[1], []])


def test_induced_and_without_relabel():
    g = cycle(6)
    sub, old = g.without({0, 3})
    assert old == [1, 2, 4, 5]
    assert sub.edges() == [(0, 1), (2, 3)]


def test_paths():
    g = path_graph(4)
    check_path(g, (0, 1, 2))
    assert not is_path(g, (0, 2))
    assert not is_path(g, (0, 1, 0))
    assert not is_path(g, ())


def test_shortest_path_is_lexicographically_least():
    g = cycle(4)
    assert shortest_path(g, {0}, {2}) == (0, 1, 2)
    assert shortest_path(g, {0}, {2}, allowed={0, 2, 3}) == (0, 3, 2)
    assert shortest_path(Graph(2), {0}, {1}) is None


@given(graphs())
def test_dist_matches_floyd_warshall(g):
    d = O.floyd_warshall(g.n, g.edges())
    for u in g.vertices():
        got = bfs_distances(g, [u])
        for v in g.vertices():
            want = d[u, v]
            assert got.get(v, INF) == (INF if math.isinf(want) else int(want))
            assert dist(g, {u}, {v}) == got.get(v, INF)


@given(graphs(), st.data())
def test_triangle_inequality(g, data):
    a, b, c = (data.draw(st.integers(0, g.n - 1)) for _ in range(3))
    ab, bc = dist(g, {a}, {b}), dist(g, {b}, {c})
    if ab < INF and bc < INF:
        assert dist(g, {a}, {c}) <= ab + bc


@given(graphs(), st.data())
def test_ball_monotone(g, data):
    x = data.draw(st.sets(st.integers(0, g.n - 1), max_size=3))
    y = x | data.draw(st.sets(st.integers(0, g.n - 1), max_size=2))
    r = data.draw(st.integers(0, 4))
    assert ball(g, x, r) <= ball(g, x, r + 1)
    assert ball(g, x, r) <= ball(g, y, r)
    assert ball(g, x, r) == {v for v in g.vertices() if dist(g, {v}, x) <= r}


@given(graphs(), st.data())
def test_components_partition(g, data):
    z = data.draw(st.sets(st.integers(0, g.n - 1)))
    comps = induced_components(g, z)
    assert sorted(v for c in comps for v in c) == sorted(z)
    for i, a in enumerate(comps):
        assert dist(g, a, a, allowed=a) == 0
        for b in comps[i + 1:]:
            assert dist(g, a, b, allowed=set(z)) == INF


@given(graphs(), st.data())
def test_shortest_path_has_dist_length(g, data):
    x = data.draw(st.sets(st.integers(0, g.n - 1), min_size=1, max_size=3))
    y = data.draw(st.sets(st.integers(0, g.n - 1), min_size=1, max_size=3))
    p = shortest_path(g, x, y)
    d = dist(g, x, y)
    if p is None:
        assert d == INF
    else:
        assert is_path(g, p) and p[0] in x and p[-1] in y and len(p) - 1 == d
