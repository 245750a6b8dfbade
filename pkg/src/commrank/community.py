"""Partitions, weighted modularity and Louvain community detection."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .errors import EmptyGraph, InvalidPartition, TooLarge, UniverseMismatch
from .graph import WeightedGraph, build_graph, node_strengths

# relative tolerance (in units of modularity) for deciding that a move improves Q
MOVE_TOL = 1e-12
# a Louvain level adding less modularity than this ends the run
LEVEL_TOL = 1e-9
BRUTE_FORCE_MAX_NODES = 10


@dataclass(frozen=True)
class Partition:
    """Disjoint cover of ``universe`` by non-empty blocks.

    Blocks are kept in canonical order (by smallest member), so two partitions
    with the same block set compare equal.
    """

    blocks: tuple[frozenset[int], ...]
    universe: frozenset[int]

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], universe: Iterable[int] | None = None):
        fblocks = [frozenset(int(v) for v in b) for b in blocks]
        if any(not b for b in fblocks):
            raise InvalidPartition("empty block")
        union: set[int] = set()
        total = 0
        for b in fblocks:
            union |= b
            total += len(b)
        if total != len(union):
            raise InvalidPartition("blocks overlap")
        uni = frozenset(union) if universe is None else frozenset(int(v) for v in universe)
        if union != uni:
            raise InvalidPartition("blocks do not cover the universe exactly")
        return cls(tuple(sorted(fblocks, key=min)), uni)

    @classmethod
    def from_labels(cls, labels: Mapping[int, int]):
        groups: dict[int, set[int]] = {}
        for v, c in labels.items():
            groups.setdefault(c, set()).add(v)
        return cls.from_blocks(groups.values(), labels.keys())

    @classmethod
    def singletons(cls, nodes: Iterable[int]):
        return cls.from_blocks([[v] for v in nodes])

    @classmethod
    def whole(cls, nodes: Iterable[int]):
        nodes = list(nodes)
        return cls.from_blocks([nodes] if nodes else [], nodes)

    def labels(self) -> dict[int, int]:
        """Node -> dense block index, following the canonical block order."""
        return {v: i for i, b in enumerate(self.blocks) for v in sorted(b)}

    def __len__(self):
        return len(self.blocks)

    def sorted_blocks(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(sorted(b)) for b in self.blocks)


def _check_universe(g: WeightedGraph, p: Partition):
    if p.universe != g.node_set():
        raise UniverseMismatch("partition universe differs from the graph's node set")


def modularity(g: WeightedGraph, p: Partition, resolution: float = 1.0) -> float:
    """Newman-Girvan modularity of ``p`` on weighted ``g``.

    Q = sum_c [ W_c / W - resolution * (S_c / 2W)^2 ] with W the total edge
    weight, W_c the weight inside block c and S_c the summed strength of c.
    """
    _check_universe(g, p)
    if g.total_weight <= 0:
        raise EmptyGraph("modularity is undefined for a graph without edges")
    label = p.labels()
    k = len(p.blocks)
    inside = [0.0] * k
    strength = [0.0] * k
    for u, v, w in g.edges():
        cu, cv = label[u], label[v]
        strength[cu] += w
        strength[cv] += w
        if cu == cv:
            inside[cu] += w
    two_w = 2.0 * g.total_weight
    q = 0.0
    for c in range(k):
        q += inside[c] / g.total_weight - resolution * (strength[c] / two_w) ** 2
    return q


@dataclass(frozen=True)
class AggregatedGraph:
    """Communities collapsed to super-nodes.

    ``graph`` holds the inter-block edges on nodes ``0..k-1`` (canonical block
    order); ``self_weight[i]`` is the edge weight folded inside block ``i``.
    """

    graph: WeightedGraph
    self_weight: dict[int, float]


def aggregate_graph(g: WeightedGraph, p: Partition) -> AggregatedGraph:
    _check_universe(g, p)
    label = p.labels()
    inter: dict[tuple[int, int], float] = {}
    self_w = {i: 0.0 for i in range(len(p.blocks))}
    for u, v, w in g.edges():
        a, b = label[u], label[v]
        if a == b:
            self_w[a] += w
        else:
            key = (a, b) if a < b else (b, a)
            inter[key] = inter.get(key, 0.0) + w
    sg = build_graph(range(len(p.blocks)), ((a, b, w) for (a, b), w in sorted(inter.items())))
    return AggregatedGraph(sg, self_w)


# ---------------------------------------------------------------------------
# Louvain


class _Level:
    """Compact adjacency for one Louvain level (indices 0..n-1, self weights allowed)."""

    def __init__(self, adj: list[dict[int, float]], self_w: list[float]):
        self.adj = adj
        self.self_w = self_w
        self.k = [2.0 * s + sum(a.values()) for a, s in zip(adj, self_w)]

    @property
    def n(self):
        return len(self.adj)

    def aggregate(self, comm: list[int]) -> tuple["_Level", list[int]]:
        relabel = {c: i for i, c in enumerate(sorted(set(comm)))}
        dense = [relabel[c] for c in comm]
        k = len(relabel)
        adj: list[dict[int, float]] = [{} for _ in range(k)]
        self_w = [0.0] * k
        for i in range(self.n):
            ci = dense[i]
            self_w[ci] += self.self_w[i]
            for j, w in self.adj[i].items():
                if j < i:
                    continue
                cj = dense[j]
                if ci == cj:
                    self_w[ci] += w
                else:
                    adj[ci][cj] = adj[ci].get(cj, 0.0) + w
                    adj[cj][ci] = adj[cj].get(ci, 0.0) + w
        return _Level(adj, self_w), dense

    def modularity(self, comm: list[int], total: float, resolution: float) -> float:
        inside: dict[int, float] = {}
        tot: dict[int, float] = {}
        for i in range(self.n):
            c = comm[i]
            tot[c] = tot.get(c, 0.0) + self.k[i]
            inside[c] = inside.get(c, 0.0) + self.self_w[i]
            for j, w in self.adj[i].items():
                if j > i and comm[j] == c:
                    inside[c] += w
        two_w = 2.0 * total
        return sum(inside.get(c, 0.0) / total - resolution * (t / two_w) ** 2 for c, t in tot.items())


def _move_nodes(level: _Level, total: float, resolution: float, rng: np.random.Generator) -> tuple[list[int], bool]:
    """Greedy single-node moves until a full sweep changes nothing."""
    n = level.n
    comm = list(range(n))
    tot = list(level.k)
    size = [1] * n
    two_w = 2.0 * total
    eps = MOVE_TOL * total
    moved_any = False
    while True:
        moved = False
        for i in (int(x) for x in rng.permutation(n)):
            ci = comm[i]
            ki = level.k[i]
            links: dict[int, float] = {}
            for j, w in level.adj[i].items():
                cj = comm[j]
                links[cj] = links.get(cj, 0.0) + w
            tot[ci] -= ki
            size[ci] -= 1
            best = ci
            best_gain = links.get(ci, 0.0) - resolution * tot[ci] * ki / two_w
            for c in sorted(links):
                if c == ci:
                    continue
                gain = links[c] - resolution * tot[c] * ki / two_w
                if gain > best_gain + eps:
                    best, best_gain = c, gain
            if best_gain < -eps and size[ci] > 0:
                # isolating the node (gain 0) beats every adjacent community
                best = min(c for c in range(n) if size[c] == 0)
                best_gain = 0.0
            comm[i] = best
            tot[best] += ki
            size[best] += 1
            if best != ci:
                moved = True
                moved_any = True
        if not moved:
            return comm, moved_any


def louvain_history(
    g: WeightedGraph, seed: int = 0, resolution: float = 1.0
) -> tuple[Partition, list[float]]:
    """Run Louvain and return the partition plus the modularity after each level."""
    if g.total_weight <= 0:
        raise EmptyGraph("Louvain needs at least one edge")
    nodes = list(g.nodes)
    index = {v: i for i, v in enumerate(nodes)}
    adj = [{index[u]: w for u, w in g.neighbors(v).items()} for v in nodes]
    level = _Level(adj, [0.0] * len(nodes))
    total = g.total_weight
    rng = np.random.default_rng(seed)

    membership = list(range(len(nodes)))  # original node -> current super-node
    history = [level.modularity(list(range(level.n)), total, resolution)]
    while True:
        comm, moved = _move_nodes(level, total, resolution, rng)
        if not moved:
            break
        q = level.modularity(comm, total, resolution)
        level, dense = level.aggregate(comm)
        membership = [dense[s] for s in membership]
        history.append(q)
        if q - history[-2] < LEVEL_TOL:
            break
    part = Partition.from_labels({nodes[i]: c for i, c in enumerate(membership)})
    return part, history


def louvain(g: WeightedGraph, seed: int = 0, resolution: float = 1.0) -> tuple[Partition, float]:
    """Seeded Louvain; Q is recomputed on the original graph."""
    part, _ = louvain_history(g, seed, resolution)
    return part, modularity(g, part, resolution)


# ---------------------------------------------------------------------------
# Exhaustive oracle


def _set_partitions(n: int):
    """Restricted growth strings of length n, one per set partition."""
    a = [0] * n

    def gen(i, top):
        # top = number of blocks used by a[:i]
        if i == n:
            yield a
            return
        for c in range(top + 1):
            a[i] = c
            yield from gen(i + 1, top + 1 if c == top else top)

    if n == 0:
        yield a
    else:
        yield from gen(1, 1)


def brute_force_best_partition(g: WeightedGraph, resolution: float = 1.0) -> tuple[Partition, float]:
    """Exact modularity maximum by enumerating every set partition.

    Ties (within 1e-12) go to the fewest blocks, then the lexicographically
    smallest sorted block contents.
    """
    if g.n > BRUTE_FORCE_MAX_NODES:
        raise TooLarge(f"brute force limited to {BRUTE_FORCE_MAX_NODES} nodes, got {g.n}")
    if g.total_weight <= 0:
        raise EmptyGraph("modularity is undefined for a graph without edges")
    nodes = list(g.nodes)
    index = {v: i for i, v in enumerate(nodes)}
    edges = [(index[u], index[v], w) for u, v, w in g.edges()]
    strengths = node_strengths(g)
    k = [strengths[v] for v in nodes]
    total = g.total_weight
    two_w = 2.0 * total

    best_key = None
    best_labels = None
    best_q = -np.inf
    for labels in _set_partitions(len(nodes)):
        nb = max(labels) + 1
        inside = [0.0] * nb
        tot = [0.0] * nb
        for i, c in enumerate(labels):
            tot[c] += k[i]
        for i, j, w in edges:
            if labels[i] == labels[j]:
                inside[labels[i]] += w
        q = sum(inside[c] / total - resolution * (tot[c] / two_w) ** 2 for c in range(nb))
        if q > best_q + 1e-12:
            best_q, best_labels, best_key = q, list(labels), None
        elif q >= best_q - 1e-12:
            if best_key is None:
                best_key = _tie_key(best_labels, nodes)
            key = _tie_key(labels, nodes)
            if key < best_key:
                best_q, best_labels, best_key = max(q, best_q), list(labels), key
    part = Partition.from_labels({nodes[i]: c for i, c in enumerate(best_labels)})
    return part, modularity(g, part, resolution)


def _tie_key(labels, nodes):
    groups: dict[int, list[int]] = {}
    for i, c in enumerate(labels):
        groups.setdefault(c, []).append(nodes[i])
    blocks = sorted(tuple(sorted(b)) for b in groups.values())
    return (len(blocks), tuple(blocks))
