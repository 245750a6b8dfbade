"""Command-line entry point: ``commrank {rank,communities,centrality,generate,perturb}``.

Exit codes: 0 success, 1 usage error, 2 input error, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import replace
from pathlib import Path

from . import io as cio
from .centrality import MEASURES, cm_similarity_table
from .community import louvain, modularity
from .config import RunConfig
from .errors import CommrankError, NodeSetMismatch
from .experiments import perturbation_member, perturbation_specs, planted_gt, random_member, random_specs
from .metrics import ji_matrix, rank_point

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3

RANK_COLUMNS = ("label", "family", "seed", "n", "m", "md", "jig", "gt_distance", "status")
RAW_COLUMNS = MEASURES + ("reachable_pair_fraction",)


class InvariantViolation(RuntimeError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _labels_for(paths) -> list[str]:
    stems = [Path(p).stem for p in paths]
    if len(set(stems)) == len(stems):
        return stems
    return [str(p) for p in paths]


def _write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _config_from_args(args) -> RunConfig:
    cfg = RunConfig.load(args.config) if getattr(args, "config", None) else RunConfig()
    overrides = {}
    for name in ("seed", "resolution", "threshold", "n_ref"):
        value = getattr(args, name, None)
        if value is not None:
            overrides[name] = value
    if getattr(args, "out", None) is not None:
        overrides["out_dir"] = args.out
    return replace(cfg, **overrides)


# ---------------------------------------------------------------------------
# subcommands


def cmd_rank(gt_path, estimate_paths, config: RunConfig, gt_partition_path=None, ji: bool = False) -> dict:
    """Score every estimate against the GT; writes rank.csv, rank.json and gt_partition.json."""
    out = Path(config.out_dir)
    gt = cio.read_graph(gt_path)
    if gt_partition_path:
        p0 = cio.load_partition(gt_partition_path, gt.nodes)
    else:
        p0, _ = louvain(gt, config.seed, config.resolution)
    q0 = modularity(gt, p0, config.resolution)
    gt_label = Path(gt_path).stem

    records = []
    failed = []
    self_point = rank_point(gt, p0, gt, config.seed, config.resolution)
    records.append(_record(gt_label, "gt", config.seed, gt, self_point, "ok"))
    if self_point.md != 0.0 or (not gt_partition_path and abs(self_point.jig - 1.0) > 1e-12):
        raise InvariantViolation(f"GT scored against itself gave md={self_point.md}, jig={self_point.jig}")

    matrices = {}
    for label, path in zip(_labels_for(estimate_paths), estimate_paths):
        try:
            g, meta = cio.read_graph(path, with_meta=True)
            if g.node_set() != gt.node_set():
                extra = sorted(g.node_set() - gt.node_set())
                missing = sorted(gt.node_set() - g.node_set())
                raise NodeSetMismatch(f"{path}: node set differs from GT (extra {extra[:5]}, missing {missing[:5]})")
            point, p1 = rank_point(gt, p0, g, config.seed, config.resolution, return_partition=True)
            records.append(_record(label, meta.get("family", "estimate"), meta.get("seed", config.seed), g, point, "ok"))
            if ji:
                matrices[label] = ji_matrix(p0, p1).to_dict()
        except (CommrankError, OSError) as exc:
            msg = f"{type(exc).__name__}: {exc}"
            failed.append((label, msg))
            records.append({"label": label, "family": "NA", "seed": "NA", "n": None, "m": None,
                            "md": None, "jig": None, "gt_distance": None, "status": "error: " + msg})

    records.sort(key=lambda r: r["label"])
    rows = [[r[c] if isinstance(r[c], str) else cio.fmt(r[c]) for c in RANK_COLUMNS] for r in records]
    _write(out / "rank.csv", _csv_text(RANK_COLUMNS, rows))
    report = {
        "gt": {"label": gt_label, "q": float(cio.fmt(q0)), "n_blocks": len(p0), "n": gt.n, "m": gt.m,
               "partition_source": str(gt_partition_path) if gt_partition_path else "louvain"},
        "config": config.to_dict(with_out_dir=False),
        "records": [{k: _json_value(v) for k, v in r.items()} for r in records],
    }
    _write(out / "rank.json", json.dumps(report, indent=2, sort_keys=True) + "\n")
    _write(out / "gt_partition.json", cio.write_partition(p0))
    for label, mat in sorted(matrices.items()):
        _write(out / "ji_matrix" / f"{label}.json", json.dumps(_round_nested(mat), indent=1, sort_keys=True) + "\n")
    return {"report": report, "failed": failed}


def _record(label, family, seed, g, point, status):
    return {"label": label, "family": family, "seed": seed, "n": g.n, "m": g.m,
            "md": point.md, "jig": point.jig, "gt_distance": point.gt_distance, "status": status}


def _json_value(v):
    if isinstance(v, float):
        return float(cio.fmt(v))
    return v


def _round_nested(x):
    if isinstance(x, float):
        return float(cio.fmt(x))
    if isinstance(x, list):
        return [_round_nested(v) for v in x]
    if isinstance(x, dict):
        return {k: _round_nested(v) for k, v in x.items()}
    return x


def cmd_communities(graph_path, config: RunConfig) -> dict:
    g = cio.read_graph(graph_path)
    p, q = louvain(g, config.seed, config.resolution)
    stem = Path(graph_path).stem
    out = Path(config.out_dir)
    _write(out / f"{stem}.partition.json", cio.write_partition(p))
    summary = {"label": stem, "q": float(cio.fmt(q)), "n_blocks": len(p), "n": g.n, "m": g.m,
               "seed": config.seed, "resolution": config.resolution}
    _write(out / f"{stem}.communities.json", json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return summary


def cmd_centrality(gt_path, estimate_paths, config: RunConfig) -> dict:
    """Writes cm_similarity.csv (relative deviations) and cm_raw.csv (raw measures)."""
    gt = cio.read_graph(gt_path)
    others = [(label, cio.read_graph(p)) for label, p in zip(_labels_for(estimate_paths), estimate_paths)]
    others.sort(key=lambda t: t[0])
    gt_label = Path(gt_path).stem
    table = cm_similarity_table(gt, others, config.seed, config.n_ref, config.threshold, gt_label)
    out = Path(config.out_dir)
    sim_rows = [[label] + [cio.fmt(row[m]) for m in MEASURES] for label, row in zip(table.labels, table.rows)]
    _write(out / "cm_similarity.csv", _csv_text(("label",) + MEASURES, sim_rows))
    raw_rows = [
        [label] + [cio.fmt(getattr(vec, m)) for m in RAW_COLUMNS] + [";".join(f"{k}:{v}" for k, v in sorted(vec.undefined.items()))]
        for label, vec in zip(table.labels, table.raw)
    ]
    _write(out / "cm_raw.csv", _csv_text(("label",) + RAW_COLUMNS + ("undefined",), raw_rows))
    return {"table": table}


def _header(meta: dict) -> dict:
    return {k: (cio.fmt(v) if isinstance(v, float) else v) for k, v in meta.items()}


def cmd_generate(config: RunConfig, gt_path=None) -> list[Path]:
    """Write the edge-matched random-model trio (and the planted GT when none is given)."""
    out = Path(config.out_dir)
    written = []
    if gt_path is None:
        gt, planted = planted_gt(config)
        meta = {"family": "planted", "n": config.planted_n, "blocks": config.planted_blocks,
                "p_in": config.planted_p_in, "p_out": config.planted_p_out, "seed": config.seed}
        _write(out / "gt.edges", cio.write_edge_list(gt, _header(meta)))
        _write(out / "gt_planted_partition.json", cio.write_partition(planted))
        written += [out / "gt.edges", out / "gt_planted_partition.json"]
    else:
        gt = cio.read_graph(gt_path)
    for spec in random_specs(gt, config, config.seed):
        mem = random_member(gt, spec)
        path = out / "random" / f"{spec.model}.edges"
        _write(path, cio.write_edge_list(mem.graph, _header(mem.meta)))
        written.append(path)
    _write(out / "config.json", config.to_json(with_out_dir=False))
    written.append(out / "config.json")
    return written


def cmd_perturb(gt_path, config: RunConfig) -> list[Path]:
    """Write every perturbation-family sweep, one self-describing edge list per spec."""
    gt = cio.read_graph(gt_path)
    out = Path(config.out_dir)
    written = []
    for spec in perturbation_specs(config, config.seed):
        mem = perturbation_member(gt, spec)
        path = out / "perturb" / spec.family / f"{mem.label}.edges"
        _write(path, cio.write_edge_list(mem.graph, _header(mem.meta)))
        written.append(path)
    _write(out / "config.json", config.to_json(with_out_dir=False))
    written.append(out / "config.json")
    return written


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="master seed (default 0)")
    common.add_argument("--resolution", type=float, default=None, help="Louvain resolution (default 1)")
    common.add_argument("--threshold", type=float, default=None, help="binarization threshold for centrality")
    common.add_argument("--n-ref", dest="n_ref", type=int, default=None, help="small-world reference graphs")
    common.add_argument("--config", default=None, help="JSON run configuration")
    common.add_argument("--out", default=None, help="output directory (default ./out)")

    parser = _Parser(prog="commrank", description="Rank estimated connectivity graphs against a ground truth.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("rank", parents=[common], help="MD / JIG rank points of estimates")
    p.add_argument("gt")
    p.add_argument("estimates", nargs="+")
    p.add_argument("--gt-partition", default=None, help="JSON node->community file used instead of Louvain")
    p.add_argument("--ji-matrix", action="store_true", help="also write per-estimate Jaccard matrices")

    p = sub.add_parser("communities", parents=[common], help="Louvain partition of a graph")
    p.add_argument("graph")

    p = sub.add_parser("centrality", parents=[common], help="centrality-measure similarity table")
    p.add_argument("gt")
    p.add_argument("estimates", nargs="*")

    p = sub.add_parser("generate", parents=[common], help="edge-matched random reference graphs")
    p.add_argument("--gt", default=None, help="GT graph to match (default: synthetic planted GT)")

    p = sub.add_parser("perturb", parents=[common], help="perturbation sweeps of a GT")
    p.add_argument("gt")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = _config_from_args(args)
        if args.command == "rank":
            result = cmd_rank(args.gt, args.estimates, config, args.gt_partition, args.ji_matrix)
            for label, msg in result["failed"]:
                print(f"commrank: {label}: {msg}", file=sys.stderr)
            return EXIT_INPUT if result["failed"] else EXIT_OK
        if args.command == "communities":
            s = cmd_communities(args.graph, config)
            print(f"{s['label']}: Q={s['q']} blocks={s['n_blocks']}")
        elif args.command == "centrality":
            cmd_centrality(args.gt, args.estimates, config)
        elif args.command == "generate":
            cmd_generate(config, args.gt)
        elif args.command == "perturb":
            cmd_perturb(args.gt, config)
    except InvariantViolation as exc:
        print(f"commrank: internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (CommrankError, OSError, json.JSONDecodeError) as exc:
        print(f"commrank: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
