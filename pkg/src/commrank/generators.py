"""Random reference models, ground-truth perturbations and a planted-partition GT.

Every generator takes ``seed`` as an int, a ``numpy.random.SeedSequence`` or a
``numpy.random.Generator`` and is deterministic for a given seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .community import Partition
from .errors import (
    BadAttach,
    BadBlockCount,
    BadK,
    BadSpec,
    NotEnoughNonEdges,
    TooManyEdges,
)
from .graph import WeightedGraph, build_graph, with_edges

FAMILIES = ("subset", "false_positive", "skeleton_fp", "hybrid")
MODELS = ("erdos_renyi", "watts_strogatz", "barabasi_albert")
WEIGHT_RULES = ("unit", "gt_median")

# guards floor/ceil of fraction * m against representation error (0.29 * 100 = 28.999...)
_ROUND_GUARD = 1e-9


def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def _floor_count(fraction: float, m: int) -> int:
    return int(math.floor(fraction * m + _ROUND_GUARD))


def _ceil_count(fraction: float, m: int) -> int:
    return int(math.ceil(fraction * m - _ROUND_GUARD))


def _pair_from_index(idx: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Decode row-major indices of the strict upper triangle of an n x n matrix."""
    iu, ju = np.triu_indices(n, k=1)
    return iu[idx], ju[idx]


# ---------------------------------------------------------------------------
# random reference models


def erdos_renyi_gnm(n: int, m: int, seed=None) -> WeightedGraph:
    max_m = n * (n - 1) // 2
    if m < 0 or m > max_m:
        raise TooManyEdges(f"G(n={n}, m={m}): at most {max_m} edges fit")
    rng = _rng(seed)
    idx = np.sort(rng.choice(max_m, size=m, replace=False)) if m else np.empty(0, dtype=int)
    us, vs = _pair_from_index(idx, n)
    return build_graph(range(n), ((int(u), int(v), 1.0) for u, v in zip(us, vs)))


def watts_strogatz(n: int, k: int, p: float, seed=None) -> WeightedGraph:
    """Ring lattice of even degree k, each lattice edge rewired with probability p.

    A rewired edge keeps its source and gets a target drawn uniformly among
    nodes that would create neither a loop nor a duplicate; if none exist the
    edge stays. The edge count is always n*k/2.
    """
    if k % 2 or not 2 <= k < n:
        raise BadK(f"k must be even with 2 <= k < n (k={k}, n={n})")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    rng = _rng(seed)
    adj: list[set[int]] = [set() for _ in range(n)]
    for u in range(n):
        for j in range(1, k // 2 + 1):
            v = (u + j) % n
            adj[u].add(v)
            adj[v].add(u)
    for j in range(1, k // 2 + 1):
        for u in range(n):
            v = (u + j) % n
            if v not in adj[u] or rng.random() >= p:
                continue
            candidates = [w for w in range(n) if w != u and w not in adj[u]]
            if not candidates:
                continue
            w = candidates[int(rng.integers(len(candidates)))]
            adj[u].discard(v)
            adj[v].discard(u)
            adj[u].add(w)
            adj[w].add(u)
    edges = ((u, v, 1.0) for u in range(n) for v in sorted(adj[u]) if u < v)
    return build_graph(range(n), edges)


def barabasi_albert(n: int, attach: int, seed=None) -> WeightedGraph:
    """Preferential attachment grown from a complete graph on ``attach + 1`` nodes."""
    if not 1 <= attach < n:
        raise BadAttach(f"attach must satisfy 1 <= attach < n (attach={attach}, n={n})")
    rng = _rng(seed)
    edges = [(u, v) for u in range(attach + 1) for v in range(u + 1, attach + 1)]
    degree = np.zeros(n)
    degree[: attach + 1] = attach
    for new in range(attach + 1, n):
        weights = degree[:new] / degree[:new].sum()
        targets = rng.choice(new, size=attach, replace=False, p=weights)
        for t in sorted(int(x) for x in targets):
            edges.append((t, new))
            degree[t] += 1
        degree[new] = attach
    return build_graph(range(n), ((u, v, 1.0) for u, v in edges))


def ba_edge_count(n: int, attach: int) -> int:
    return attach * (attach + 1) // 2 + attach * (n - attach - 1)


@dataclass(frozen=True)
class RandomModelSpec:
    model: str
    n: int
    target_m: int
    ws_k: int = 2
    ws_p: float = 0.1
    ba_attach: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.model not in MODELS:
            raise BadSpec(f"unknown model {self.model!r}")


def realized_edges(spec: RandomModelSpec) -> int:
    if spec.model == "erdos_renyi":
        return spec.target_m
    if spec.model == "watts_strogatz":
        return spec.n * spec.ws_k // 2
    return ba_edge_count(spec.n, spec.ba_attach)


def match_edge_count(template: RandomModelSpec, gt: WeightedGraph) -> RandomModelSpec:
    """Choose the integer model parameter whose edge count is closest to ``gt.m``.

    Ties go to the smaller parameter. ``target_m`` of the result is the edge
    count the chosen parameters actually realize.
    """
    n, m_gt = gt.n, gt.m
    if template.model == "erdos_renyi":
        m = min(m_gt, n * (n - 1) // 2)
        return replace(template, n=n, target_m=m)
    if template.model == "watts_strogatz":
        ks = range(2, n, 2)
        if not ks:
            raise BadK(f"no even k with 2 <= k < n for n={n}")
        k = min(ks, key=lambda k: (abs(n * k // 2 - m_gt), k))
        return replace(template, n=n, ws_k=k, target_m=n * k // 2)
    attaches = range(1, n)
    if not attaches:
        raise BadAttach(f"no valid attach for n={n}")
    a = min(attaches, key=lambda a: (abs(ba_edge_count(n, a) - m_gt), a))
    return replace(template, n=n, ba_attach=a, target_m=ba_edge_count(n, a))


def generate(spec: RandomModelSpec) -> WeightedGraph:
    if spec.model == "erdos_renyi":
        return erdos_renyi_gnm(spec.n, spec.target_m, spec.seed)
    if spec.model == "watts_strogatz":
        return watts_strogatz(spec.n, spec.ws_k, spec.ws_p, spec.seed)
    return barabasi_albert(spec.n, spec.ba_attach, spec.seed)


def embed_on_nodes(g: WeightedGraph, nodes, seed=None) -> WeightedGraph:
    """Relabel a graph on ``0..n-1`` onto ``nodes`` through a seeded random bijection.

    Generators number nodes structurally (ring order, arrival order); a random
    bijection keeps that numbering from lining up with a GT's node ids.
    """
    nodes = sorted(nodes)
    if len(nodes) != g.n:
        raise ValueError("node count mismatch")
    perm = _rng(seed).permutation(len(nodes))
    target = [nodes[int(i)] for i in perm]
    return build_graph(nodes, ((target[u], target[v], w) for u, v, w in g.edges()), None)


# ---------------------------------------------------------------------------
# perturbations of a ground truth


@dataclass(frozen=True)
class PerturbationSpec:
    family: str
    remove_fraction: float = 0.0
    add_fraction: float = 0.0
    seed: int = 0
    weight_rule: str = "gt_median"

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise BadSpec(f"unknown perturbation family {self.family!r}")
        if not 0.0 <= self.remove_fraction <= 1.0:
            raise BadSpec("remove_fraction must lie in [0, 1]")
        if self.add_fraction < 0:
            raise BadSpec("add_fraction must be non-negative")
        if self.family == "subset" and self.add_fraction != 0:
            raise BadSpec("subset perturbations add no edges")
        if self.family == "false_positive" and self.remove_fraction != 0:
            raise BadSpec("false_positive perturbations remove no edges")
        if self.family == "skeleton_fp" and self.remove_fraction < 0.5:
            raise BadSpec("skeleton_fp keeps at most half of the edges (remove_fraction >= 0.5)")
        if self.weight_rule not in WEIGHT_RULES:
            raise BadSpec(f"unknown weight rule {self.weight_rule!r}")

    def label(self) -> str:
        return f"{self.family}_r{self.remove_fraction:g}_a{self.add_fraction:g}_s{self.seed}"


def spurious_weight(g: WeightedGraph, rule: str) -> float:
    if rule == "unit":
        return 1.0
    if rule == "gt_median":
        weights = [w for _, _, w in g.edges()]
        return float(np.median(weights)) if weights else 1.0
    raise BadSpec(f"unknown weight rule {rule!r}")


def _sample_edges(edges: list, count: int, rng: np.random.Generator) -> list:
    if count >= len(edges):
        return list(edges)
    keep = np.sort(rng.choice(len(edges), size=count, replace=False))
    return [edges[int(i)] for i in keep]


def _non_edges(g: WeightedGraph) -> list[tuple[int, int]]:
    nodes = g.nodes
    return [
        (u, v)
        for i, u in enumerate(nodes)
        for v in nodes[i + 1 :]
        if not g.has_edge(u, v)
    ]


def _add_random(g: WeightedGraph, count: int, weight: float, rng: np.random.Generator) -> WeightedGraph:
    if count == 0:
        return g
    candidates = _non_edges(g)
    if count > len(candidates):
        raise NotEnoughNonEdges(f"need {count} non-edges, only {len(candidates)} available")
    chosen = _sample_edges(candidates, count, rng)
    return with_edges(g, g.edge_list() + [(u, v, weight) for u, v in chosen])


def remove_edges(g: WeightedGraph, fraction: float, seed=None) -> WeightedGraph:
    """Delete floor(fraction * m) uniformly chosen edges; nodes are kept."""
    if not 0.0 <= fraction <= 1.0:
        raise ValueError("fraction must lie in [0, 1]")
    edges = g.edge_list()
    drop = _floor_count(fraction, len(edges))
    return with_edges(g, _sample_edges(edges, len(edges) - drop, _rng(seed)))


def add_false_positives(g: WeightedGraph, add_fraction: float, seed=None, weight_rule: str = "gt_median") -> WeightedGraph:
    """Add ceil(add_fraction * m) uniformly chosen non-edges."""
    if add_fraction < 0:
        raise ValueError("add_fraction must be non-negative")
    count = _ceil_count(add_fraction, g.m)
    return _add_random(g, count, spurious_weight(g, weight_rule), _rng(seed))


def skeleton_plus_fp(
    g: WeightedGraph, keep_fraction: float, add_fraction: float, seed=None, weight_rule: str = "gt_median"
) -> WeightedGraph:
    """Keep ceil(keep_fraction * m) GT edges, then add ceil(add_fraction * m) non-edges."""
    if not 0.0 < keep_fraction <= 0.5:
        raise ValueError("keep_fraction must lie in (0, 0.5]")
    if add_fraction < 0:
        raise ValueError("add_fraction must be non-negative")
    keep_rng, add_rng = (_rng(s) for s in _substreams(seed, 2))
    edges = g.edge_list()
    skeleton = with_edges(g, _sample_edges(edges, _ceil_count(keep_fraction, len(edges)), keep_rng))
    return _add_random(skeleton, _ceil_count(add_fraction, len(edges)), spurious_weight(g, weight_rule), add_rng)


def hybrid_perturb(g: WeightedGraph, spec: PerturbationSpec) -> WeightedGraph:
    """Remove then add; both counts are fractions of the original edge count."""
    remove_rng, add_rng = (_rng(s) for s in _substreams(spec.seed, 2))
    edges = g.edge_list()
    drop = _floor_count(spec.remove_fraction, len(edges))
    kept = with_edges(g, _sample_edges(edges, len(edges) - drop, remove_rng))
    return _add_random(kept, _ceil_count(spec.add_fraction, len(edges)), spurious_weight(g, spec.weight_rule), add_rng)


def perturb(g: WeightedGraph, spec: PerturbationSpec) -> WeightedGraph:
    if spec.family == "subset":
        return remove_edges(g, spec.remove_fraction, spec.seed)
    if spec.family == "false_positive":
        return add_false_positives(g, spec.add_fraction, spec.seed, spec.weight_rule)
    if spec.family == "skeleton_fp":
        return skeleton_plus_fp(g, 1.0 - spec.remove_fraction, spec.add_fraction, spec.seed, spec.weight_rule)
    return hybrid_perturb(g, spec)


def _substreams(seed, count: int):
    if isinstance(seed, np.random.Generator):
        return seed.spawn(count)
    if isinstance(seed, np.random.SeedSequence):
        return seed.spawn(count)
    return np.random.SeedSequence(seed).spawn(count)


def substream(master_seed: int, *index: int) -> int:
    """Integer seed derived from a master seed and a member index; order-independent."""
    return int(np.random.SeedSequence([master_seed, *index]).generate_state(1, dtype=np.uint32)[0])


# ---------------------------------------------------------------------------
# synthetic ground truth


def planted_partition(
    n: int, k_blocks: int, p_in: float, p_out: float, seed=None
) -> tuple[WeightedGraph, Partition]:
    """Equal-size blocks of consecutive node ids; pairs edged independently."""
    if k_blocks < 1 or n % k_blocks:
        raise BadBlockCount(f"{k_blocks} blocks do not divide {n} nodes")
    if not 0.0 <= p_out <= p_in <= 1.0:
        raise ValueError("need 0 <= p_out <= p_in <= 1")
    size = n // k_blocks
    block = np.arange(n) // size
    iu, ju = np.triu_indices(n, k=1)
    prob = np.where(block[iu] == block[ju], p_in, p_out)
    hit = _rng(seed).random(len(iu)) < prob
    g = build_graph(range(n), ((int(u), int(v), 1.0) for u, v in zip(iu[hit], ju[hit])))
    part = Partition.from_blocks([range(b * size, (b + 1) * size) for b in range(k_blocks)])
    return g, part
