"""Partition similarity (JIG), Modularity Distance and the combined rank point."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .community import Partition, louvain, modularity
from .errors import BothEmpty, EmptyGraph, EmptyUniverse, NodeSetMismatch, UniverseMismatch
from .graph import WeightedGraph


def jaccard_index(a, b) -> float:
    a, b = set(a), set(b)
    union = len(a | b)
    if union == 0:
        raise BothEmpty("Jaccard index of two empty sets is undefined")
    return len(a & b) / union


@dataclass(frozen=True)
class JiMatrix:
    """Pairwise Jaccard indices, GT blocks (rows) x estimated blocks (columns)."""

    rows: tuple[tuple[int, ...], ...]
    cols: tuple[tuple[int, ...], ...]
    values: np.ndarray
    overlap_counts: np.ndarray

    def top_k(self, k: int = 4) -> list[tuple[int, int, float]]:
        """The ``k`` largest entries as ``(row, col, ji)``; ties by row then column."""
        flat = [
            (float(self.values[i, j]), i, j)
            for i in range(self.values.shape[0])
            for j in range(self.values.shape[1])
            if self.overlap_counts[i, j] > 0
        ]
        flat.sort(key=lambda t: (-t[0], t[1], t[2]))
        return [(i, j, v) for v, i, j in flat[:k]]

    def to_dict(self) -> dict:
        return {
            "rows": [list(b) for b in self.rows],
            "cols": [list(b) for b in self.cols],
            "values": self.values.tolist(),
            "overlap_counts": self.overlap_counts.astype(int).tolist(),
            "top": [{"row": i, "col": j, "ji": v} for i, j, v in self.top_k()],
        }


def _shared_universe(p_gt: Partition, p_est: Partition):
    if p_gt.universe != p_est.universe:
        raise UniverseMismatch("partitions cover different node sets")
    if not p_gt.universe:
        raise EmptyUniverse("partitions of an empty universe")


def ji_matrix(p_gt: Partition, p_est: Partition) -> JiMatrix:
    _shared_universe(p_gt, p_est)
    col_of = p_est.labels()
    overlap = np.zeros((len(p_gt), len(p_est)), dtype=np.int64)
    for i, block in enumerate(p_gt.blocks):
        for v in block:
            overlap[i, col_of[v]] += 1
    row_sizes = np.array([len(b) for b in p_gt.blocks])[:, None]
    col_sizes = np.array([len(b) for b in p_est.blocks])[None, :]
    values = overlap / (row_sizes + col_sizes - overlap)
    return JiMatrix(p_gt.sorted_blocks(), p_est.sorted_blocks(), values, overlap)


def jig(p_gt: Partition, p_est: Partition) -> float:
    """Jaccard Index Generalization.

    sqrt( sum_ij JI(A_i, B_j) * |A_i & B_j| / |V| ), summed over GT blocks A_i
    and estimated blocks B_j. Equals 1 exactly when the partitions coincide.
    """
    _shared_universe(p_gt, p_est)
    n = len(p_gt.universe)
    col_of = p_est.labels()
    est_sizes = [len(b) for b in p_est.blocks]
    total = 0.0
    for a in p_gt.blocks:
        counts: dict[int, int] = {}
        for v in a:
            c = col_of[v]
            counts[c] = counts.get(c, 0) + 1
        for c, inter in counts.items():
            total += inter * inter / (len(a) + est_sizes[c] - inter)
    # dividing by |V| last keeps the identity case exact: sum |A_i| / |V| = 1
    return math.sqrt(total / n)


def modularity_distance(g0: WeightedGraph, g1: WeightedGraph, p0: Partition, resolution: float = 1.0) -> float:
    """|Q(g0, p0) - Q(g1, p0)|: modularity change when the GT partition is embedded in g1."""
    if g0.node_set() != g1.node_set():
        raise NodeSetMismatch("graphs have different node sets")
    if p0.universe != g0.node_set():
        raise NodeSetMismatch("partition does not cover the graphs' node set")
    for g, name in ((g0, "reference"), (g1, "estimated")):
        if g.total_weight <= 0:
            raise EmptyGraph(f"{name} graph has no edges")
    return abs(modularity(g0, p0, resolution) - modularity(g1, p0, resolution))


def gt_distance(md: float, jig_value: float) -> float:
    """Euclidean distance from (md, jig) to the ideal point (0, 1)."""
    return math.hypot(md, 1.0 - jig_value)


@dataclass(frozen=True)
class RankPoint:
    md: float
    jig: float
    gt_distance: float

    @classmethod
    def from_coords(cls, md: float, jig_value: float):
        return cls(md, jig_value, gt_distance(md, jig_value))


def rank_point(
    g0: WeightedGraph,
    p0: Partition,
    g1: WeightedGraph,
    seed: int = 0,
    resolution: float = 1.0,
    return_partition: bool = False,
):
    """Score ``g1`` against the reference ``g0`` whose communities are ``p0``.

    The estimate's own communities come from Louvain with the same seed and
    resolution that should have produced ``p0``.
    """
    md = modularity_distance(g0, g1, p0, resolution)
    p1, _ = louvain(g1, seed, resolution)
    point = RankPoint.from_coords(md, jig(p0, p1))
    if return_partition:
        return point, p1
    return point
