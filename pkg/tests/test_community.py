import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from commrank.community import (
    Partition,
    aggregate_graph,
    brute_force_best_partition,
    louvain,
    louvain_history,
    modularity,
)
from commrank.errors import EmptyGraph, InvalidPartition, TooLarge, UniverseMismatch
from commrank.graph import build_graph, scale_weights

from conftest import clique_ring, complete, gnp, two_triangles

TRIANGLES = Partition.from_blocks([[0, 1, 2], [3, 4, 5]])


def test_partition_validation():
    with pytest.raises(InvalidPartition):
        Partition.from_blocks([[0, 1], [1, 2]])
    with pytest.raises(InvalidPartition):
        Partition.from_blocks([[0], []])
    with pytest.raises(InvalidPartition):
        Partition.from_blocks([[0, 1]], universe=[0, 1, 2])
    assert Partition.from_blocks([[2, 3], [0, 1]]) == Partition.from_blocks([[1, 0], [3, 2]])


def test_single_block_is_zero():
    g = two_triangles(bridge=True)
    assert modularity(g, Partition.whole(g.nodes)) == 0.0


def test_two_triangles():
    # 2 * (3/6 - (6/12)^2)
    assert modularity(two_triangles(), TRIANGLES) == pytest.approx(0.5, abs=1e-15)


def test_k2_singletons_lower_bound():
    k2 = build_graph([0, 1], [(0, 1, 1)])
    assert modularity(k2, Partition.singletons([0, 1])) == -0.5


def test_modularity_errors():
    with pytest.raises(EmptyGraph):
        modularity(build_graph(range(3), []), Partition.whole(range(3)))
    with pytest.raises(UniverseMismatch):
        modularity(two_triangles(), Partition.whole(range(5)))


def test_modularity_matches_networkx_weighted():
    rng = np.random.default_rng(3)
    for _ in range(20):
        G = nx.gnp_random_graph(15, 0.3, seed=int(rng.integers(1 << 30)))
        for u, v in G.edges:
            G[u][v]["weight"] = float(rng.uniform(0.1, 5))
        if G.number_of_edges() == 0:
            continue
        g = build_graph(G.nodes, [(u, v, d["weight"]) for u, v, d in G.edges(data=True)])
        labels = {v: int(rng.integers(4)) for v in G.nodes}
        p = Partition.from_labels(labels)
        for res in (0.5, 1.0, 2.0):
            expected = nx.community.modularity(G, [set(b) for b in p.blocks], resolution=res)
            assert modularity(g, p, res) == pytest.approx(expected, abs=1e-12)


# --- aggregation --------------------------------------------------------------


def test_aggregate_two_triangles():
    agg = aggregate_graph(two_triangles(), TRIANGLES)
    assert agg.graph.n == 2 and agg.graph.m == 0
    assert agg.self_weight == {0: 3.0, 1: 3.0}


def test_aggregate_singletons_is_copy():
    g = two_triangles(bridge=True)
    agg = aggregate_graph(g, Partition.singletons(g.nodes))
    assert agg.graph == g
    assert set(agg.self_weight.values()) == {0.0}


def test_aggregate_k4_pairs():
    agg = aggregate_graph(complete(4), Partition.from_blocks([[0, 1], [2, 3]]))
    assert agg.graph.edge_list() == [(0, 1, 4.0)]
    assert agg.self_weight == {0: 1.0, 1: 1.0}


# --- brute force oracle ---------------------------------------------------------


def test_brute_force_triangle():
    p, q = brute_force_best_partition(complete(3))
    assert p == Partition.whole(range(3)) and q == 0.0


def test_brute_force_k2_prefers_single_block():
    p, q = brute_force_best_partition(complete(2))
    assert len(p) == 1 and q == 0.0


def test_brute_force_two_triangles():
    p, q = brute_force_best_partition(two_triangles())
    assert p == TRIANGLES and q == pytest.approx(0.5)


def test_brute_force_limits():
    with pytest.raises(TooLarge):
        brute_force_best_partition(complete(11))
    with pytest.raises(EmptyGraph):
        brute_force_best_partition(build_graph(range(3), []))


# --- louvain ----------------------------------------------------------------------


def test_louvain_two_triangles():
    for seed in range(5):
        p, q = louvain(two_triangles(), seed)
        assert p == TRIANGLES and q == pytest.approx(0.5)


def test_louvain_k5_single_community():
    bp, bq = brute_force_best_partition(complete(5))
    assert len(bp) == 1 and bq == 0.0
    for seed in range(5):
        p, q = louvain(complete(5), seed)
        assert len(p) == 1 and q == 0.0


def _locally_optimal(g, p):
    """No single-node move and no merge of two blocks increases Q."""
    q = modularity(g, p)
    labels = p.labels()
    k = len(p)
    for v in g.nodes:
        for c in range(k + 1):
            if c == labels[v]:
                continue
            moved = dict(labels)
            moved[v] = c
            used = sorted(set(moved.values()))
            dense = {old: i for i, old in enumerate(used)}
            if modularity(g, Partition.from_labels({u: dense[x] for u, x in moved.items()})) > q + 1e-12:
                return False
    for a, b in itertools.combinations(range(k), 2):
        merged = [blk for i, blk in enumerate(p.blocks) if i not in (a, b)] + [p.blocks[a] | p.blocks[b]]
        if modularity(g, Partition.from_blocks(merged)) > q + 1e-12:
            return False
    return True


def test_louvain_clique_ring():
    g = clique_ring()
    cliques = Partition.from_blocks([range(c * 5, c * 5 + 5) for c in range(4)])
    for seed in range(5):
        p, _ = louvain(g, seed)
        assert p == cliques
    assert _locally_optimal(g, cliques)


def test_louvain_empty_graph():
    with pytest.raises(EmptyGraph):
        louvain(build_graph(range(4), []))


def test_louvain_keeps_isolated_nodes_as_singletons():
    g = build_graph(range(5), [(0, 1, 1), (1, 2, 1), (0, 2, 1)])
    p, _ = louvain(g, 0)
    assert frozenset({3}) in p.blocks and frozenset({4}) in p.blocks


def test_louvain_determinism_and_reported_q():
    rng = np.random.default_rng(11)
    g = gnp(40, 0.15, rng)
    a = louvain(g, 7)
    b = louvain(g, 7)
    assert a == b
    assert a[1] == pytest.approx(modularity(g, a[0]), abs=1e-9)


def test_louvain_history_monotone():
    rng = np.random.default_rng(5)
    for _ in range(10):
        g = gnp(60, 0.08, rng)
        if g.m == 0:
            continue
        _, hist = louvain_history(g, int(rng.integers(100)))
        assert all(b >= a - 1e-12 for a, b in zip(hist, hist[1:]))


@pytest.mark.parametrize("c", [0.5, 2.0, 4.0, 3.0])
def test_louvain_scale_invariant(c):
    rng = np.random.default_rng(2)
    g = gnp(30, 0.2, rng)
    p, q = louvain(g, 1)
    ps, qs = louvain(scale_weights(g, c), 1)
    assert ps == p
    assert qs == pytest.approx(q, abs=1e-12)


def test_resolution_one_is_standard_modularity():
    g = two_triangles(bridge=True)
    assert modularity(g, TRIANGLES, 1.0) == modularity(g, TRIANGLES)


@st.composite
def small_graphs(draw):
    n = draw(st.integers(2, 7))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), min_size=1, unique=True))
    weights = draw(st.lists(st.floats(0.1, 10), min_size=len(chosen), max_size=len(chosen)))
    return build_graph(range(n), [(u, v, w) for (u, v), w in zip(chosen, weights)])


@settings(max_examples=60, deadline=None)
@given(small_graphs(), st.integers(0, 1000))
def test_louvain_bounded_by_brute_force(g, seed):
    _, q = louvain(g, seed)
    _, best = brute_force_best_partition(g)
    assert q <= best + 1e-12
    assert q >= modularity(g, Partition.singletons(g.nodes)) - 1e-12


@settings(max_examples=60, deadline=None)
@given(small_graphs(), st.floats(0.1, 100))
def test_modularity_scale_invariant(g, c):
    p = Partition.from_labels({v: v % 2 for v in g.nodes})
    assert modularity(scale_weights(g, c), p) == pytest.approx(modularity(g, p), abs=1e-12)
    assert -0.5 - 1e-12 <= modularity(g, p) <= 1.0
