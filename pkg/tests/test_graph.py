import pytest
from hypothesis import given, strategies as st

from commrank.errors import DuplicateEdge, NonPositiveWeight, SelfLoop, UnknownEndpoint
from commrank.graph import binarize, build_graph, node_strengths

from conftest import star


def test_build_simple():
    g = build_graph({0, 1, 2}, [(0, 1, 1), (1, 2, 1)])
    assert g.m == 2
    assert g.total_weight == 2
    assert g.weight(1, 0) == g.weight(0, 1) == 1


def test_isolated_nodes_kept():
    g = build_graph({0, 1, 2}, [])
    assert g.n == 3 and g.m == 0 and g.total_weight == 0


@pytest.mark.parametrize(
    "nodes, edges, exc",
    [
        ({0, 1}, [(0, 0, 1)], SelfLoop),
        ({0, 1}, [(0, 1, 1), (1, 0, 2)], DuplicateEdge),
        ({0, 1}, [(0, 5, 1)], UnknownEndpoint),
        ({0, 1}, [(0, 1, 0)], NonPositiveWeight),
        ({0, 1}, [(0, 1, -1.5)], NonPositiveWeight),
    ],
)
def test_build_errors(nodes, edges, exc):
    with pytest.raises(exc):
        build_graph(nodes, edges)


def test_strengths():
    tri = build_graph(range(3), [(0, 1, 1), (1, 2, 1), (0, 2, 1)])
    assert node_strengths(tri) == {0: 2, 1: 2, 2: 2}
    assert node_strengths(star(4)) == {0: 3, 1: 1, 2: 1, 3: 1}
    assert node_strengths(build_graph({0, 1}, [(0, 1, 2.5)])) == {0: 2.5, 1: 2.5}


def test_binarize():
    g = build_graph(range(3), [(0, 1, 0.2), (1, 2, 0.8)])
    b = binarize(g, 0.5)
    assert b.edge_list() == [(1, 2, 1.0)]
    assert b.nodes == g.nodes
    assert binarize(g, 0.8).m == 0 and binarize(g, 0.8).n == 3
    unit = build_graph(range(3), [(0, 1, 1), (1, 2, 1)])
    assert binarize(unit, 0) == unit


weighted_graphs = st.integers(2, 12).flatmap(
    lambda n: st.lists(
        st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.floats(0.01, 100)),
        max_size=40,
    ).map(lambda es: (n, es))
)


def _dedup(n, es):
    seen = {}
    for u, v, w in es:
        if u != v:
            seen.setdefault((min(u, v), max(u, v)), w)
    return build_graph(range(n), [(u, v, w) for (u, v), w in seen.items()])


@given(weighted_graphs)
def test_strength_sum_is_twice_total_weight(case):
    g = _dedup(*case)
    total = sum(node_strengths(g).values())
    assert total == pytest.approx(2 * g.total_weight, rel=1e-9, abs=0)


@given(weighted_graphs)
def test_symmetric_lookup_and_binarize_idempotent(case):
    g = _dedup(*case)
    for u, v, w in g.edges():
        assert g.weight(u, v) == g.weight(v, u) == w
    b = binarize(g, 0)
    assert binarize(b, 0) == b
