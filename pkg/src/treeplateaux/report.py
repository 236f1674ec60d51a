"""Corpus pipelines and serialized reports: batch rows, aggregates, histograms.

Outputs are JSON (single-tree reports) and CSV (tabular batch aggregates);
every serialized report carries a schema string.  Aggregation rules: the
reduction average is the mean of per-tree percentages, std is the population
standard deviation, and the combined plateau multiplicity is the mean of
m_minus + m_plus (twice either side's mean, since they always agree).
"""

from __future__ import annotations

import json
import statistics
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Iterable, Union

from .graph import Graph, RootedTree
from .ingest import ParseError, parse_edge_list, parse_swc
from .plateaux import verify_theorem
from .simplify import SimplificationResult, simplify
from .spectral import spectrum_of

SCHEMA_SIMPLIFY = "treeplateaux/simplify/v1"
SCHEMA_SPECTRUM = "treeplateaux/spectrum/v1"
SCHEMA_VERIFY = "treeplateaux/verify/v1"
SCHEMA_BATCH = "treeplateaux/batch/v1"
SCHEMA_HIST = "treeplateaux/hist/v1"
SCHEMA_FUZZ = "treeplateaux/fuzz/v1"

TREE_SUFFIXES = (".swc", ".edges", ".edgelist", ".txt")
MANIFEST_NAME = "clusters.json"


def load_tree_file(path: Union[str, Path], fmt: str = "auto") -> Union[RootedTree, Graph]:
    """Parse one tree file; format from the extension unless given."""
    path = Path(path)
    if fmt == "auto":
        fmt = "swc" if path.suffix.lower() == ".swc" else "edgelist"
    text = path.read_text()
    if fmt == "swc":
        return parse_swc(text)
    if fmt == "edgelist":
        return parse_edge_list(text)
    raise ValueError(f"unknown format {fmt!r}")


@dataclass(frozen=True)
class BatchRow:
    tree_id: str
    cluster_label: str
    original_count: int
    simplified_count: int
    reduction_percent: float
    m_minus: int
    m_plus: int
    tau_vi: int
    theorem_holds: bool


def discover_corpus(directory: Union[str, Path]) -> list[tuple[Path, str]]:
    """All tree files under a directory with their cluster labels.

    The label comes from the containing subdirectory (top level -> ""), or
    from an optional clusters.json manifest mapping relative paths to labels.
    Sorted by relative path for deterministic output.
    """
    directory = Path(directory)
    manifest: dict[str, str] = {}
    manifest_path = directory / MANIFEST_NAME
    if manifest_path.exists():
        manifest = {str(k): str(v) for k, v in json.loads(manifest_path.read_text()).items()}
    found: list[tuple[Path, str]] = []
    for path in sorted(directory.rglob("*")):
        if not path.is_file() or path.suffix.lower() not in TREE_SUFFIXES:
            continue
        rel = path.relative_to(directory)
        label = manifest.get(str(rel))
        if label is None:
            label = "" if rel.parent == Path(".") else str(rel.parent)
        found.append((path, label))
    return found


def analyze_tree_file(path: Union[str, Path], tree_id: str, cluster_label: str) -> BatchRow:
    """Full pipeline for one file: parse, simplify, spectrum, certificate."""
    loaded = load_tree_file(path)
    if not isinstance(loaded, RootedTree):
        raise ParseError(f"{path}: input contains cycles; batch expects trees")
    result = simplify(loaded)
    spec = spectrum_of(result.tree.graph)
    cert = verify_theorem(result.tree.graph, spectrum=spec)
    return BatchRow(
        tree_id=tree_id,
        cluster_label=cluster_label,
        original_count=result.stats.original_vertex_count,
        simplified_count=result.stats.simplified_vertex_count,
        reduction_percent=result.stats.reduction_percent,
        m_minus=cert.m_minus,
        m_plus=cert.m_plus,
        tau_vi=cert.tau_vi,
        theorem_holds=cert.holds,
    )


def _batch_worker(args: tuple[str, str, str]) -> tuple[str, Union[BatchRow, str]]:
    path, tree_id, label = args
    try:
        return ("ok", analyze_tree_file(path, tree_id, label))
    except Exception as exc:  # per-file failures are reported, batch continues
        return ("error", f"{tree_id}: {exc}")


def run_batch(
    directory: Union[str, Path],
    parallel: int = 1,
) -> tuple[list[BatchRow], list[str]]:
    """Analyze every tree under a directory; returns (rows, failure messages).

    Rows come back ordered by tree id regardless of worker completion order.
    """
    corpus = discover_corpus(directory)
    jobs = [
        (str(path), str(path.relative_to(Path(directory)).with_suffix("")), label)
        for path, label in corpus
    ]
    results: list[tuple[str, Union[BatchRow, str]]] = []
    if parallel > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            results = list(pool.map(_batch_worker, jobs))
    else:
        results = [_batch_worker(job) for job in jobs]
    rows = [payload for status, payload in results if status == "ok"]
    failures = [payload for status, payload in results if status == "error"]
    rows.sort(key=lambda r: r.tree_id)
    return rows, failures


@dataclass(frozen=True)
class ClusterAggregate:
    cluster_label: str
    tree_count: int
    mean_original: float
    std_original: float
    mean_simplified: float
    std_simplified: float
    mean_reduction_percent: float
    std_reduction_percent: float
    mean_combined_multiplicity: float


def _aggregate(label: str, rows: list[BatchRow]) -> ClusterAggregate:
    originals = [r.original_count for r in rows]
    simplified = [r.simplified_count for r in rows]
    reductions = [r.reduction_percent for r in rows]
    combined = [r.m_minus + r.m_plus for r in rows]
    return ClusterAggregate(
        cluster_label=label,
        tree_count=len(rows),
        mean_original=statistics.fmean(originals),
        std_original=statistics.pstdev(originals),
        mean_simplified=statistics.fmean(simplified),
        std_simplified=statistics.pstdev(simplified),
        mean_reduction_percent=statistics.fmean(reductions),
        std_reduction_percent=statistics.pstdev(reductions),
        mean_combined_multiplicity=statistics.fmean(combined),
    )


def cluster_aggregates(rows: list[BatchRow]) -> list[ClusterAggregate]:
    """Per-cluster aggregates plus an 'all' row covering the whole corpus."""
    by_label: dict[str, list[BatchRow]] = {}
    for row in rows:
        by_label.setdefault(row.cluster_label, []).append(row)
    out = [_aggregate(label, members) for label, members in sorted(by_label.items())]
    if rows:
        out.append(_aggregate("all", rows))
    return out


BATCH_COLUMNS = (
    "tree_id",
    "cluster_label",
    "original_count",
    "simplified_count",
    "reduction_percent",
    "m_minus",
    "m_plus",
    "tau_vi",
    "theorem_holds",
)

AGGREGATE_COLUMNS = (
    "cluster_label",
    "tree_count",
    "mean_original",
    "std_original",
    "mean_simplified",
    "std_simplified",
    "mean_reduction_percent",
    "std_reduction_percent",
    "mean_combined_multiplicity",
)


def batch_csv_text(rows: list[BatchRow], aggregates: list[ClusterAggregate]) -> str:
    """Tree rows then an appended per-cluster aggregate block ('#' comments)."""
    lines = [f"# schema: {SCHEMA_BATCH}", ",".join(BATCH_COLUMNS)]
    for row in rows:
        d = asdict(row)
        lines.append(",".join(_csv_cell(d[c]) for c in BATCH_COLUMNS))
    lines.append("")
    lines.append("# cluster aggregates (population std; reduction averaged per tree)")
    lines.append(",".join(AGGREGATE_COLUMNS))
    for agg in aggregates:
        d = asdict(agg)
        lines.append(",".join(_csv_cell(d[c]) for c in AGGREGATE_COLUMNS))
    return "\n".join(lines) + "\n"


def _csv_cell(value: object) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.6f}"
    text = str(value)
    if "," in text or '"' in text:
        text = '"' + text.replace('"', '""') + '"'
    return text


def degree_histogram(graphs: Iterable[Graph]) -> dict[int, int]:
    """Aggregate degree -> vertex count over a corpus of graphs."""
    counts: Counter[int] = Counter()
    for g in graphs:
        counts.update(g.degrees())
    return dict(sorted(counts.items()))


def corpus_histograms(
    directory: Union[str, Path],
) -> tuple[dict[int, int], dict[int, int], list[str]]:
    """Degree histograms of a corpus before and after simplification."""
    original: Counter[int] = Counter()
    simplified: Counter[int] = Counter()
    failures: list[str] = []
    for path, _ in discover_corpus(directory):
        try:
            loaded = load_tree_file(path)
            if not isinstance(loaded, RootedTree):
                raise ParseError("input contains cycles; hist expects trees")
            original.update(loaded.graph.degrees())
            simplified.update(simplify(loaded).tree.graph.degrees())
        except Exception as exc:
            failures.append(f"{path}: {exc}")
    return dict(sorted(original.items())), dict(sorted(simplified.items())), failures


def simplify_report(tree: RootedTree, result: SimplificationResult) -> dict:
    """JSON-ready simplified tree: edges, root, provenance map, and stats."""
    g = result.tree.graph
    id_map = {
        str(tree.graph.label_of(old)): new for old, new in sorted(result.index_map.items())
    }
    return {
        "root": result.tree.root,
        "edges": [[u, v] for u, v in g.edges()],
        "labels": list(g.labels) if g.labels is not None else None,
        "id_map": id_map,
        "stats": asdict(result.stats),
    }


def json_report(schema: str, input_desc: object, result: object) -> dict:
    return {"schema": schema, "input": input_desc, "result": result}
