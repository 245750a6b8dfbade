"""Undirected, simple, weighted graphs over an explicit node set."""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping

from .errors import DuplicateEdge, NonPositiveWeight, SelfLoop, UnknownEndpoint


class WeightedGraph:
    """Immutable undirected simple graph with positive edge weights.

    Nodes are non-negative integers and are stored explicitly, so isolated
    nodes survive edge deletions. Use :func:`build_graph` to construct one.
    """

    __slots__ = ("_nodes", "_adj", "_total_weight", "_m", "names")

    def __init__(self, nodes, adj, total_weight, m, names=None):
        self._nodes = nodes
        self._adj = adj
        self._total_weight = total_weight
        self._m = m
        self.names = dict(names) if names else {}

    @property
    def nodes(self) -> tuple[int, ...]:
        return self._nodes

    @property
    def n(self) -> int:
        return len(self._nodes)

    @property
    def m(self) -> int:
        return self._m

    @property
    def total_weight(self) -> float:
        return self._total_weight

    def node_set(self) -> frozenset[int]:
        return frozenset(self._nodes)

    def neighbors(self, v: int) -> Mapping[int, float]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._adj and v in self._adj[u]

    def weight(self, u: int, v: int) -> float:
        return self._adj[u][v]

    def edges(self) -> Iterator[tuple[int, int, float]]:
        """Yield each edge once as ``(u, v, w)`` with ``u < v``, in sorted order."""
        for u in self._nodes:
            for v in sorted(self._adj[u]):
                if u < v:
                    yield u, v, self._adj[u][v]

    def edge_list(self) -> list[tuple[int, int, float]]:
        return list(self.edges())

    def __eq__(self, other):
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self._nodes == other._nodes and self._adj == other._adj

    def __hash__(self):
        return hash((self._nodes, tuple(self.edges())))

    def __repr__(self):
        return f"WeightedGraph(n={self.n}, m={self.m}, total_weight={self.total_weight:g})"


def build_graph(
    nodes: Iterable[int],
    edges: Iterable[tuple[int, int, float]],
    names: Mapping[int, str] | None = None,
) -> WeightedGraph:
    node_list = sorted(set(int(v) for v in nodes))
    if any(v < 0 for v in node_list):
        raise ValueError("node ids must be non-negative integers")
    adj: dict[int, dict[int, float]] = {v: {} for v in node_list}
    total = 0.0
    m = 0
    for u, v, w in edges:
        u, v, w = int(u), int(v), float(w)
        if u == v:
            raise SelfLoop(f"self-loop at node {u}")
        if u not in adj:
            raise UnknownEndpoint(f"edge ({u}, {v}): node {u} not in node set")
        if v not in adj:
            raise UnknownEndpoint(f"edge ({u}, {v}): node {v} not in node set")
        if not w > 0:
            raise NonPositiveWeight(f"edge ({u}, {v}) has weight {w}")
        if v in adj[u]:
            raise DuplicateEdge(f"duplicate edge ({u}, {v})")
        adj[u][v] = w
        adj[v][u] = w
        total += w
        m += 1
    return WeightedGraph(tuple(node_list), adj, total, m, names)


def node_strengths(g: WeightedGraph) -> dict[int, float]:
    """Weighted degree of every node (zero for isolated nodes)."""
    return {v: float(sum(g.neighbors(v).values())) for v in g.nodes}


def binarize(g: WeightedGraph, threshold: float = 0.0) -> WeightedGraph:
    """Keep edges with weight strictly above ``threshold``, all rewritten to weight 1."""
    if threshold < 0:
        raise ValueError("threshold must be non-negative")
    kept = [(u, v, 1.0) for u, v, w in g.edges() if w > threshold]
    return build_graph(g.nodes, kept, g.names)


def with_edges(g: WeightedGraph, edges: Iterable[tuple[int, int, float]]) -> WeightedGraph:
    """A new graph on ``g``'s node set with the given edges."""
    return build_graph(g.nodes, edges, g.names)


def scale_weights(g: WeightedGraph, c: float) -> WeightedGraph:
    return with_edges(g, ((u, v, w * c) for u, v, w in g.edges()))
