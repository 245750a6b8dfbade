import json

import pytest
from hypothesis import given, settings, strategies as st

from commrank.community import Partition
from commrank.config import RunConfig
from commrank.errors import (
    EmptyBlock,
    Malformed,
    MissingNode,
    NegativeEntry,
    NonzeroDiagonal,
    NotSquare,
    NotSymmetric,
    SelfLoop,
)
from commrank.graph import build_graph
from commrank.io import (
    fmt,
    parse_adjacency_csv,
    parse_edge_list,
    parse_edge_list_with_meta,
    read_graph,
    read_partition,
    write_adjacency_csv,
    write_edge_list,
    write_partition,
)


def test_parse_edge_list():
    g = parse_edge_list("0 1 1.0\n1 2 2.5")
    assert g.n == 3 and g.m == 2 and g.weight(2, 1) == 2.5


def test_parse_edge_list_default_weight_and_comments():
    g = parse_edge_list("# a comment\n0 1\n\n1 2 3  # trailing\n")
    assert g.edge_list() == [(0, 1, 1.0), (1, 2, 3.0)]


def test_parse_self_loop_reports_line():
    with pytest.raises(SelfLoop, match="line 1"):
        parse_edge_list("0 0 1.0")


def test_parse_nodes_header():
    g = parse_edge_list("# nodes=5\n0 1 1")
    assert g.n == 5 and g.m == 1


@pytest.mark.parametrize("text, line", [("0 1 1\n0 x 1", 2), ("0 1 2 3", 1), ("0", 1), ("-1 2 1", 1)])
def test_parse_malformed(text, line):
    with pytest.raises(Malformed) as exc:
        parse_edge_list(text, "f.edges")
    assert exc.value.line == line
    assert "f.edges" in str(exc.value)


def test_parse_duplicate_names_both_lines():
    with pytest.raises(ValueError, match="line 3.*line 1"):
        parse_edge_list("0 1 1\n1 2 1\n1 0 2")


def test_metadata_header():
    g, meta = parse_edge_list_with_meta("# nodes=3\n# family=subset remove_fraction=0.1 seed=7\n0 1 1\n")
    assert meta == {"nodes": "3", "family": "subset", "remove_fraction": "0.1", "seed": "7"}


def test_parse_adjacency():
    g = parse_adjacency_csv("0,1,0\n1,0,2\n0,2,0\n")
    assert g.edge_list() == [(0, 1, 1.0), (1, 2, 2.0)]
    z = parse_adjacency_csv("0,0,0,0\n" * 4)
    assert z.n == 4 and z.m == 0


def test_parse_adjacency_with_names():
    g = parse_adjacency_csv("lh,rh\n0,3\n3,0\n")
    assert g.names == {0: "lh", 1: "rh"} and g.m == 1


@pytest.mark.parametrize(
    "text, exc",
    [
        ("0,1\n2,0\n", NotSymmetric),
        ("0,1,0\n1,0,0\n", NotSquare),
        ("1,0\n0,0\n", NonzeroDiagonal),
        ("0,-1\n-1,0\n", NegativeEntry),
    ],
)
def test_parse_adjacency_errors(text, exc):
    with pytest.raises(exc):
        parse_adjacency_csv(text)


def test_partition_round_trip():
    p = Partition.from_blocks([[0, 1], [2]])
    text = write_partition(p)
    assert json.loads(text) == {"0": 0, "1": 0, "2": 1}
    assert read_partition(text) == p


def test_partition_errors():
    with pytest.raises(MissingNode):
        read_partition('{"0": 0, "1": 0}', universe=[0, 1, 2])
    with pytest.raises(EmptyBlock):
        read_partition('{"0": 0, "1": 2}')
    with pytest.raises(Malformed):
        read_partition("[1, 2]")


def test_fmt():
    assert fmt(None) == "NA"
    assert fmt(1 / 3) == "0.333333333333"
    assert fmt(3) == "3"
    assert fmt(0.0) == "0"


def test_read_graph_dispatch(tmp_path):
    g = build_graph(range(4), [(0, 1, 0.5), (2, 3, 1.25)])
    (tmp_path / "a.csv").write_text(write_adjacency_csv(g))
    (tmp_path / "a.edges").write_text(write_edge_list(g, {"family": "x"}))
    assert read_graph(tmp_path / "a.csv") == g
    h, meta = read_graph(tmp_path / "a.edges", with_meta=True)
    assert h == g and meta["family"] == "x"


def test_sparse_node_ids_round_trip():
    g = build_graph([3, 7, 10, 42], [(3, 42, 2.0)])
    assert parse_edge_list(write_edge_list(g)) == g


graphs = st.integers(1, 15).flatmap(
    lambda n: st.dictionaries(
        st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] < e[1]),
        st.floats(1e-6, 1e6, allow_nan=False),
        max_size=30,
    ).map(lambda d: build_graph(range(n), [(u, v, w) for (u, v), w in d.items()]))
)


@settings(max_examples=100)
@given(graphs)
def test_edge_list_round_trip(g):
    text = write_edge_list(g)
    h = parse_edge_list(text)
    assert h == g
    assert write_edge_list(h) == text


@settings(max_examples=50)
@given(graphs)
def test_adjacency_round_trip(g):
    assert parse_adjacency_csv(write_adjacency_csv(g)) == g


@settings(max_examples=100)
@given(st.lists(st.integers(0, 5), min_size=1, max_size=30))
def test_partition_round_trip_property(labels):
    p = Partition.from_labels(dict(enumerate(labels)))
    assert read_partition(write_partition(p), universe=range(len(labels))) == p


def test_config_round_trip(tmp_path):
    cfg = RunConfig(seed=4, remove_grid=(0.2, 0.4), hybrid_grid=((0.1, 0.2),))
    cfg.save(tmp_path / "c.json")
    assert RunConfig.load(tmp_path / "c.json") == cfg
    assert RunConfig.from_dict(RunConfig().to_dict()) == RunConfig()
    with pytest.raises(ValueError):
        RunConfig.from_dict({"bogus": 1})
