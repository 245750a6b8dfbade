"""The graph database around a ground truth, and seeded scoring of it.

A database holds, for one GT and one master seed, the four perturbation
families plus the three edge-matched random models. Each member owns a seed
derived from (master seed, family index, member index), so members can be
built and scored in any order.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .centrality import cm_similarity_table
from .community import Partition, louvain
from .config import RunConfig
from .errors import CommrankError
from .generators import (
    MODELS,
    PerturbationSpec,
    RandomModelSpec,
    embed_on_nodes,
    generate,
    match_edge_count,
    perturb,
    planted_partition,
    substream,
)
from .graph import WeightedGraph
from .metrics import RankPoint, rank_point

_FAMILY_INDEX = {"subset": 1, "false_positive": 2, "skeleton_fp": 3, "hybrid": 4, "random": 5}


@dataclass(frozen=True)
class Member:
    label: str
    family: str
    graph: WeightedGraph
    meta: dict = field(default_factory=dict)


def perturbation_specs(config: RunConfig, master_seed: int) -> list[PerturbationSpec]:
    specs = []
    fam = _FAMILY_INDEX
    for i, f in enumerate(config.remove_grid):
        specs.append(PerturbationSpec("subset", f, 0.0, substream(master_seed, fam["subset"], i), config.weight_rule))
    for i, f in enumerate(config.add_grid):
        specs.append(
            PerturbationSpec("false_positive", 0.0, f, substream(master_seed, fam["false_positive"], i), config.weight_rule)
        )
    for i, f in enumerate(config.skeleton_add_grid):
        specs.append(
            PerturbationSpec(
                "skeleton_fp", 1.0 - config.skeleton_keep, f,
                substream(master_seed, fam["skeleton_fp"], i), config.weight_rule,
            )
        )
    for i, (r, a) in enumerate(config.hybrid_grid):
        specs.append(PerturbationSpec("hybrid", r, a, substream(master_seed, fam["hybrid"], i), config.weight_rule))
    return specs


def random_specs(gt: WeightedGraph, config: RunConfig, master_seed: int) -> list[RandomModelSpec]:
    out = []
    for i, model in enumerate(MODELS):
        template = RandomModelSpec(model, gt.n, gt.m, ws_p=config.ws_p, seed=substream(master_seed, _FAMILY_INDEX["random"], i))
        out.append(match_edge_count(template, gt))
    return out


def random_member(gt: WeightedGraph, spec: RandomModelSpec) -> Member:
    g = embed_on_nodes(generate(spec), gt.nodes, spec.seed)
    meta = {
        "family": "random", "model": spec.model, "n": spec.n, "target_m": spec.target_m,
        "ws_k": spec.ws_k, "ws_p": spec.ws_p, "ba_attach": spec.ba_attach, "seed": spec.seed,
    }
    return Member(spec.model, "random", g, meta)


def perturbation_member(gt: WeightedGraph, spec: PerturbationSpec) -> Member:
    meta = {
        "family": spec.family, "remove_fraction": spec.remove_fraction,
        "add_fraction": spec.add_fraction, "weight_rule": spec.weight_rule, "seed": spec.seed,
    }
    label = f"{spec.family}_r{spec.remove_fraction:.2f}_a{spec.add_fraction:.2f}"
    return Member(label, spec.family, perturb(gt, spec), meta)


def build_database(gt: WeightedGraph, config: RunConfig, master_seed: int | None = None) -> list[Member]:
    seed = config.seed if master_seed is None else master_seed
    members = [perturbation_member(gt, s) for s in perturbation_specs(config, seed)]
    members += [random_member(gt, s) for s in random_specs(gt, config, seed)]
    return members


def planted_gt(config: RunConfig, master_seed: int | None = None) -> tuple[WeightedGraph, Partition]:
    seed = config.seed if master_seed is None else master_seed
    return planted_partition(
        config.planted_n, config.planted_blocks, config.planted_p_in, config.planted_p_out, substream(seed, 0)
    )


@dataclass(frozen=True)
class Scored:
    member: Member
    point: RankPoint | None
    error: str | None = None


def score_database(
    gt: WeightedGraph, members: list[Member], config: RunConfig, gt_partition: Partition | None = None
) -> tuple[Partition, list[Scored]]:
    """Rank every member against ``gt`` with one shared GT partition."""
    if gt_partition is None:
        gt_partition, _ = louvain(gt, config.seed, config.resolution)
    out = []
    for mem in members:
        try:
            point = rank_point(gt, gt_partition, mem.graph, config.seed, config.resolution)
            out.append(Scored(mem, point))
        except CommrankError as exc:
            out.append(Scored(mem, None, f"{type(exc).__name__}: {exc}"))
    return gt_partition, out


# ---------------------------------------------------------------------------
# Monte-Carlo trials behind the robustness and centrality comparisons


@dataclass
class RobustnessTrial:
    master_seed: int
    gt_m: int
    gt_q: float
    scored: list[Scored]
    fp_jig: list[float]
    removal_jig: list[float]
    remove_fractions: list[float]
    remove_distances: list[float]

    def random_max_distance(self) -> float:
        return max(s.point.gt_distance for s in self.scored if s.member.family == "random")

    def perturbed(self) -> list[Scored]:
        return [s for s in self.scored if s.member.family != "random"]


def robustness_trial(
    master_seed: int,
    config: RunConfig | None = None,
    replicates: int = 10,
    fp_fraction: float = 0.5,
    removal_fraction: float = 0.5,
) -> RobustnessTrial:
    """Score the full database around one planted GT.

    Besides the database, ``replicates`` independent draws of a pure
    false-positive perturbation and of a pure edge-removal perturbation are
    scored, so their mean JIG can be compared.
    """
    cfg = replace(config or RunConfig(), seed=master_seed)
    gt, _ = planted_gt(cfg)
    p0, q0 = louvain(gt, cfg.seed, cfg.resolution)
    _, scored = score_database(gt, build_database(gt, cfg), cfg, p0)

    def jig_of(spec):
        return rank_point(gt, p0, perturb(gt, spec), cfg.seed, cfg.resolution).jig

    fp = [jig_of(PerturbationSpec("false_positive", 0.0, fp_fraction, substream(master_seed, 7, r), cfg.weight_rule))
          for r in range(replicates)]
    rm = [jig_of(PerturbationSpec("subset", removal_fraction, 0.0, substream(master_seed, 8, r), cfg.weight_rule))
          for r in range(replicates)]
    subset = [s for s in scored if s.member.family == "subset"]
    return RobustnessTrial(
        master_seed, gt.m, q0, scored, fp, rm,
        [s.member.meta["remove_fraction"] for s in subset],
        [s.point.gt_distance for s in subset],
    )


def cm_trial(master_seed: int, config: RunConfig | None = None, removal_fraction: float = 0.5):
    """Centrality-similarity rows of the edge-matched ER graph and an edge-removal perturbation."""
    cfg = replace(config or RunConfig(), seed=master_seed)
    gt, _ = planted_gt(cfg)
    er_spec = random_specs(gt, cfg, master_seed)[0]
    er = random_member(gt, er_spec).graph
    removed = perturb(gt, PerturbationSpec("subset", removal_fraction, 0.0, substream(master_seed, 9), cfg.weight_rule))
    return cm_similarity_table(
        gt, [("erdos_renyi", er), ("removed", removed)], cfg.seed, cfg.n_ref, cfg.threshold
    )
