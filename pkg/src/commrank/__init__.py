"""Community-structure metrics for ranking estimated connectivity graphs against a ground truth."""

from .community import Partition, aggregate_graph, brute_force_best_partition, louvain, modularity
from .graph import WeightedGraph, binarize, build_graph, node_strengths
from .metrics import JiMatrix, RankPoint, gt_distance, jaccard_index, ji_matrix, jig, modularity_distance, rank_point

__all__ = [
    "JiMatrix",
    "Partition",
    "RankPoint",
    "WeightedGraph",
    "aggregate_graph",
    "binarize",
    "brute_force_best_partition",
    "build_graph",
    "gt_distance",
    "jaccard_index",
    "ji_matrix",
    "jig",
    "louvain",
    "modularity",
    "modularity_distance",
    "node_strengths",
    "rank_point",
]
