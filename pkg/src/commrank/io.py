"""Edge-list / adjacency-matrix ingestion, partition JSON and report writers.

Edge-list format: one ``u v w`` edge per line (weight optional, default 1),
``#`` starts a comment. A ``# nodes=N`` header declares nodes ``0..N-1`` so
isolated nodes survive; other ``# key=value`` header tokens are kept as
metadata (generated files record family, fractions and seed this way).
"""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

import numpy as np

from .community import Partition
from .errors import (
    DuplicateEdge,
    EmptyBlock,
    Malformed,
    MissingNode,
    NegativeEntry,
    NonPositiveWeight,
    NonzeroDiagonal,
    NotSquare,
    NotSymmetric,
    SelfLoop,
)
from .graph import WeightedGraph, build_graph

NA = "NA"
FLOAT_FORMAT = ".12g"


def fmt(x) -> str:
    """Report rendering of a number: 12 significant digits, NA for undefined."""
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return NA
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), FLOAT_FORMAT)


# ---------------------------------------------------------------------------
# edge lists


def _parse_header(line: str, meta: dict):
    for token in line.lstrip("#").split():
        if "=" in token:
            key, _, value = token.partition("=")
            meta[key] = value


def parse_edge_list_with_meta(text: str, source: str | None = None) -> tuple[WeightedGraph, dict]:
    meta: dict[str, str] = {}
    nodes: set[int] = set()
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            _parse_header(line, meta)
            continue
        line = line.split("#", 1)[0]
        parts = line.split()
        if len(parts) not in (2, 3):
            raise Malformed(f"expected 'u v [w]', got {raw!r}", lineno, source)
        try:
            u, v = int(parts[0]), int(parts[1])
            w = float(parts[2]) if len(parts) == 3 else 1.0
        except ValueError:
            raise Malformed(f"non-numeric field in {raw!r}", lineno, source) from None
        if u < 0 or v < 0:
            raise Malformed("node ids must be non-negative", lineno, source)
        where = f"{source + ':' if source else ''}line {lineno}"
        if u == v:
            raise SelfLoop(f"{where}: self-loop at node {u}")
        if not w > 0:
            raise NonPositiveWeight(f"{where}: edge ({u}, {v}) has weight {w}")
        edges.append((u, v, w, lineno))
        nodes.update((u, v))
    if "node_ids" in meta:
        try:
            ids = {int(x) for x in meta["node_ids"].split(",") if x}
        except ValueError:
            raise Malformed("bad node_ids header", None, source) from None
        if not nodes <= ids:
            raise Malformed(f"edge endpoint(s) {sorted(nodes - ids)[:10]} not in node_ids", None, source)
        nodes = ids
    elif "nodes" in meta:
        try:
            count = int(meta["nodes"])
        except ValueError:
            raise Malformed(f"bad nodes header {meta['nodes']!r}", None, source) from None
        if nodes and max(nodes) >= count:
            raise Malformed(f"node {max(nodes)} outside declared nodes={count}", None, source)
        nodes.update(range(count))
    seen: dict[tuple[int, int], int] = {}
    for u, v, _, lineno in edges:
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdge(
                f"{source + ':' if source else ''}line {lineno}: duplicate edge ({u}, {v}), first on line {seen[key]}"
            )
        seen[key] = lineno
    g = build_graph(nodes, ((u, v, w) for u, v, w, _ in edges))
    return g, meta


def parse_edge_list(text: str, source: str | None = None) -> WeightedGraph:
    return parse_edge_list_with_meta(text, source)[0]


def write_edge_list(g: WeightedGraph, meta: dict | None = None) -> str:
    if g.nodes == tuple(range(g.n)):
        lines = [f"# nodes={g.n}"]
    else:
        lines = ["# node_ids=" + ",".join(str(v) for v in g.nodes)]
    if meta:
        lines.append("# " + " ".join(f"{k}={meta[k]}" for k in meta))
    for u, v, w in g.edges():
        lines.append(f"{u} {v} {w!r}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# adjacency matrices


def parse_adjacency_csv(text: str, source: str | None = None, tol: float = 1e-9) -> WeightedGraph:
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    names = None
    if rows:
        try:
            [float(c) for c in rows[0]]
        except ValueError:
            names = [c.strip() for c in rows[0]]
            rows = rows[1:]
    try:
        mat = np.array([[float(c) for c in r] for r in rows], dtype=float)
    except ValueError as exc:
        raise Malformed(f"non-numeric entry ({exc})", None, source) from None
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise NotSquare(f"{source or 'matrix'}: expected {n} columns in every row")
    if mat.size == 0:
        return build_graph([], [])
    if (mat < 0).any():
        i, j = map(int, np.argwhere(mat < 0)[0])
        raise NegativeEntry(f"{source or 'matrix'}: negative entry at ({i}, {j})")
    if not np.allclose(np.diag(mat), 0.0, atol=0.0):
        i = int(np.flatnonzero(np.diag(mat))[0])
        raise NonzeroDiagonal(f"{source or 'matrix'}: nonzero diagonal at {i}")
    if np.abs(mat - mat.T).max() > tol:
        i, j = map(int, np.argwhere(np.abs(mat - mat.T) > tol)[0])
        raise NotSymmetric(f"{source or 'matrix'}: entry ({i}, {j}) differs from ({j}, {i})")
    iu, ju = np.triu_indices(n, k=1)
    keep = mat[iu, ju] > 0
    edges = ((int(i), int(j), float(mat[i, j])) for i, j in zip(iu[keep], ju[keep]))
    name_map = {i: nm for i, nm in enumerate(names)} if names else None
    return build_graph(range(n), edges, name_map)


def write_adjacency_csv(g: WeightedGraph) -> str:
    index = {v: i for i, v in enumerate(g.nodes)}
    mat = np.zeros((g.n, g.n))
    for u, v, w in g.edges():
        mat[index[u], index[v]] = mat[index[v], index[u]] = w
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in mat:
        writer.writerow([repr(float(x)) for x in row])
    return buf.getvalue()


def read_graph(path, with_meta: bool = False):
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".csv":
        g, meta = parse_adjacency_csv(text, str(path)), {}
    else:
        g, meta = parse_edge_list_with_meta(text, str(path))
    return (g, meta) if with_meta else g


# ---------------------------------------------------------------------------
# partitions


def partition_to_dict(p: Partition) -> dict[str, int]:
    return {str(v): c for v, c in sorted(p.labels().items())}


def write_partition(p: Partition) -> str:
    return json.dumps(partition_to_dict(p), indent=None, sort_keys=False) + "\n"


def read_partition(text: str, universe=None, source: str | None = None) -> Partition:
    """Parse a node -> community-index JSON object; indices must be dense from 0."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise Malformed(f"invalid JSON: {exc.msg}", exc.lineno, source) from None
    if not isinstance(data, dict):
        raise Malformed("partition must be a JSON object", None, source)
    try:
        labels = {int(k): int(v) for k, v in data.items()}
    except (TypeError, ValueError):
        raise Malformed("keys and values must be integers", None, source) from None
    if universe is not None:
        missing = sorted(set(universe) - set(labels))
        if missing:
            raise MissingNode(f"partition has no community for node(s) {missing[:10]}")
        extra = sorted(set(labels) - set(universe))
        if extra:
            raise Malformed(f"partition names unknown node(s) {extra[:10]}", None, source)
    used = set(labels.values())
    if used and used != set(range(max(used) + 1)):
        gaps = sorted(set(range(max(used) + 1)) - used)
        raise EmptyBlock(f"community indices are not dense from 0; missing {gaps[:10]}")
    if any(c < 0 for c in used):
        raise EmptyBlock("negative community index")
    return Partition.from_labels(labels)


def load_partition(path, universe=None) -> Partition:
    return read_partition(Path(path).read_text(), universe, str(path))
