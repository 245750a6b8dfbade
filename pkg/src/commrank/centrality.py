"""Classical topology measures on binarized graphs and the GT-similarity table."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import (
    CommrankError,
    DegenerateReference,
    Disconnected,
    NoReachablePairs,
    ZeroVariance,
)
from .generators import erdos_renyi_gnm
from .graph import WeightedGraph, binarize

SIMILARITY_EPS = 1e-12
DEFAULT_N_REF = 20

MEASURES = (
    "average_degree",
    "average_distance",
    "small_worldness",
    "clustering_coefficient",
    "assortativity",
    "global_efficiency",
    "local_efficiency",
)


def _adjacency(g: WeightedGraph, threshold: float) -> dict[int, set[int]]:
    b = binarize(g, threshold)
    return {v: set(b.neighbors(v)) for v in b.nodes}


def _bfs(adj: dict[int, set[int]], source: int) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in adj[u]:
            if w not in dist:
                dist[w] = du
                queue.append(w)
    return dist


def _pair_distances(adj: dict[int, set[int]]) -> Iterable[int]:
    """Hop distance of every reachable unordered pair."""
    for u in adj:
        for v, d in _bfs(adj, u).items():
            if v > u:
                yield d


def average_degree(g: WeightedGraph, threshold: float = 0.0) -> float:
    if g.n == 0:
        raise ValueError("average degree of an empty node set")
    return 2.0 * binarize(g, threshold).m / g.n


def _average_distance(adj) -> tuple[float, float]:
    n = len(adj)
    total = 0
    count = 0
    for d in _pair_distances(adj):
        total += d
        count += 1
    if count == 0:
        raise NoReachablePairs("no pair of nodes is connected")
    return total / count, count / (n * (n - 1) / 2)


def average_distance(g: WeightedGraph, threshold: float = 0.0) -> tuple[float, float]:
    """Mean hop distance over reachable pairs, and the fraction of pairs reachable."""
    return _average_distance(_adjacency(g, threshold))


def _local_clustering(adj, v) -> float:
    nbrs = adj[v]
    k = len(nbrs)
    if k < 2:
        return 0.0
    links = sum(len(adj[u] & nbrs) for u in nbrs) / 2
    return links / (k * (k - 1) / 2)


def _clustering(adj) -> float:
    if not adj:
        raise ValueError("clustering of an empty node set")
    return sum(_local_clustering(adj, v) for v in adj) / len(adj)


def clustering_coefficient(g: WeightedGraph, threshold: float = 0.0) -> float:
    """Average local clustering; nodes of degree < 2 contribute 0."""
    return _clustering(_adjacency(g, threshold))


def _global_efficiency(adj) -> float:
    n = len(adj)
    if n < 2:
        return 0.0
    return sum(1.0 / d for d in _pair_distances(adj)) / (n * (n - 1) / 2)


def global_efficiency(g: WeightedGraph, threshold: float = 0.0) -> float:
    if g.n < 2:
        raise ValueError("global efficiency needs at least two nodes")
    return _global_efficiency(_adjacency(g, threshold))


def _local_efficiency(adj) -> float:
    total = 0.0
    for v, nbrs in adj.items():
        if len(nbrs) < 2:
            continue
        sub = {u: adj[u] & nbrs for u in nbrs}
        total += _global_efficiency(sub)
    return total / len(adj)


def local_efficiency(g: WeightedGraph, threshold: float = 0.0) -> float:
    """Mean efficiency of each node's neighbourhood subgraph."""
    if g.n == 0:
        raise ValueError("local efficiency of an empty node set")
    return _local_efficiency(_adjacency(g, threshold))


def _assortativity(adj) -> float:
    x = []
    y = []
    for u, nbrs in adj.items():
        for v in nbrs:
            x.append(len(adj[u]))
            y.append(len(adj[v]))
    if not x:
        raise ZeroVariance("no edges")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    # both orientations are counted, so x and y share mean and variance
    dx = x - x.mean()
    dy = y - y.mean()
    var = float(np.dot(dx, dx))
    if var <= 1e-12 * len(x):
        raise ZeroVariance("all edge endpoints have the same degree")
    return float(np.dot(dx, dy) / math.sqrt(var * float(np.dot(dy, dy))))


def assortativity(g: WeightedGraph, threshold: float = 0.0) -> float:
    """Degree-degree Pearson correlation over edges (each edge in both orientations)."""
    return _assortativity(_adjacency(g, threshold))


def _is_connected(adj) -> bool:
    if not adj:
        return False
    start = next(iter(adj))
    return len(_bfs(adj, start)) == len(adj)


def small_worldness(
    g: WeightedGraph, n_ref: int = DEFAULT_N_REF, seed: int = 0, threshold: float = 0.0
) -> float:
    """sigma = (C / C_rand) / (L / L_rand) against seeded G(n, m) references."""
    adj = _adjacency(g, threshold)
    n = len(adj)
    m = sum(len(a) for a in adj.values()) // 2
    if n < 4 or m < n:
        raise Disconnected(f"small-worldness needs n >= 4 and m >= n (n={n}, m={m})")
    if not _is_connected(adj):
        raise Disconnected("graph is disconnected")
    c = _clustering(adj)
    length, _ = _average_distance(adj)
    seeds = np.random.SeedSequence(seed).spawn(n_ref)
    c_ref = []
    l_ref = []
    for ss in seeds:
        ref = erdos_renyi_gnm(n, m, np.random.default_rng(ss))
        radj = {v: set(ref.neighbors(v)) for v in ref.nodes}
        c_ref.append(_clustering(radj))
        l_ref.append(_average_distance(radj)[0])
    c_rand = float(np.mean(c_ref))
    l_rand = float(np.mean(l_ref))
    if c_rand <= 0:
        raise DegenerateReference("reference ensemble has zero clustering")
    return (c / c_rand) / (length / l_rand)


@dataclass(frozen=True)
class CmVector:
    """Raw measures of one graph; ``None`` marks an undefined measure."""

    average_degree: float | None
    average_distance: float | None
    small_worldness: float | None
    clustering_coefficient: float | None
    assortativity: float | None
    global_efficiency: float | None
    local_efficiency: float | None
    reachable_pair_fraction: float | None
    undefined: dict[str, str]

    def measures(self) -> dict[str, float | None]:
        return {name: getattr(self, name) for name in MEASURES}


def cm_vector(g: WeightedGraph, seed: int = 0, n_ref: int = DEFAULT_N_REF, threshold: float = 0.0) -> CmVector:
    adj = _adjacency(g, threshold)
    values: dict[str, float | None] = {}
    undefined: dict[str, str] = {}

    def attempt(name, fn):
        try:
            values[name] = fn()
        except CommrankError as exc:
            values[name] = None
            undefined[name] = type(exc).__name__

    m = sum(len(a) for a in adj.values()) // 2
    values["average_degree"] = 2.0 * m / len(adj) if adj else None
    try:
        values["average_distance"], values["reachable_pair_fraction"] = _average_distance(adj)
    except NoReachablePairs as exc:
        values["average_distance"] = values["reachable_pair_fraction"] = None
        undefined["average_distance"] = undefined["reachable_pair_fraction"] = type(exc).__name__
    attempt("small_worldness", lambda: small_worldness(g, n_ref, seed, threshold))
    values["clustering_coefficient"] = _clustering(adj)
    attempt("assortativity", lambda: _assortativity(adj))
    if m == 0:
        # efficiencies are formally 0 without edges, but carry no distance information
        values["global_efficiency"] = values["local_efficiency"] = None
        undefined["global_efficiency"] = undefined["local_efficiency"] = "NoReachablePairs"
    else:
        values["global_efficiency"] = _global_efficiency(adj)
        values["local_efficiency"] = _local_efficiency(adj)
    return CmVector(undefined=undefined, **values)


@dataclass(frozen=True)
class CmSimilarityTable:
    """Relative absolute deviation of each graph's measures from the GT's."""

    labels: tuple[str, ...]
    rows: tuple[dict[str, float | None], ...]
    raw: tuple[CmVector, ...]
    gt: CmVector

    def row(self, label: str) -> dict[str, float | None]:
        return self.rows[self.labels.index(label)]


def relative_deviation(value: float | None, reference: float | None) -> float | None:
    if value is None or reference is None:
        return None
    return abs(value - reference) / max(abs(reference), SIMILARITY_EPS)


def cm_similarity_table(
    gt: WeightedGraph,
    others,
    seed: int = 0,
    n_ref: int = DEFAULT_N_REF,
    threshold: float = 0.0,
    gt_label: str = "gt",
) -> CmSimilarityTable:
    """``others`` is a mapping or sequence of ``(label, graph)``; the GT row comes first."""
    if gt.n == 0:
        raise ValueError("ground truth has no nodes")
    items = list(others.items()) if hasattr(others, "items") else list(others)
    ref = cm_vector(gt, seed, n_ref, threshold)
    labels = [gt_label]
    raws = [ref]
    for label, graph in items:
        labels.append(label)
        raws.append(cm_vector(graph, seed, n_ref, threshold))
    rows = []
    ref_measures = ref.measures()
    for vec in raws:
        rows.append({k: relative_deviation(v, ref_measures[k]) for k, v in vec.measures().items()})
    return CmSimilarityTable(tuple(labels), tuple(rows), tuple(raws), ref)

