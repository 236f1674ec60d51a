"""Tree input: SWC morphology files, edge lists, and synthetic families.

Parsers and generators are pure given their inputs (including the random
seed), so they are safe to call concurrently.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Union

from .graph import Graph, GraphError, RootedTree


class ParseError(ValueError):
    """Input text could not be parsed into a valid graph or tree."""


@dataclass(frozen=True)
class SwcRecord:
    """One SWC sample point: ``id type x y z radius parent`` (parent -1 = root)."""

    id: int
    type_code: int
    x: float
    y: float
    z: float
    radius: float
    parent: int


def parse_swc(text: str) -> RootedTree:
    """Parse SWC text into a rooted tree.

    Lines starting with '#' are comments; data lines carry exactly 7
    whitespace-separated fields.  Dense vertex indices follow the order of
    appearance; original ids are kept as labels and (x, y, z) as positions.
    Raises ParseError (with the offending line number) on duplicate ids,
    missing parents, multiple roots, parent-link cycles, or malformed lines.
    """
    records: list[SwcRecord] = []
    lines_of: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 7:
            raise ParseError(f"line {lineno}: expected 7 fields, got {len(parts)}")
        try:
            rec = SwcRecord(
                id=int(parts[0]),
                type_code=int(parts[1]),
                x=float(parts[2]),
                y=float(parts[3]),
                z=float(parts[4]),
                radius=float(parts[5]),
                parent=int(parts[6]),
            )
        except ValueError:
            raise ParseError(f"line {lineno}: malformed record {line!r}") from None
        if rec.id in lines_of:
            raise ParseError(
                f"line {lineno}: duplicate id {rec.id} (first seen on line {lines_of[rec.id]})"
            )
        lines_of[rec.id] = lineno
        records.append(rec)
    if not records:
        raise ParseError("no SWC records found")

    roots = [r for r in records if r.parent == -1]
    if not roots:
        raise ParseError("no root record (parent -1)")
    if len(roots) > 1:
        ids = ", ".join(str(r.id) for r in roots)
        raise ParseError(f"multiple roots: ids {ids}")

    index = {rec.id: i for i, rec in enumerate(records)}
    edges = []
    for rec in records:
        if rec.parent == -1:
            continue
        if rec.parent not in index:
            raise ParseError(
                f"line {lines_of[rec.id]}: missing parent {rec.parent} for id {rec.id}"
            )
        edges.append((index[rec.id], index[rec.parent]))
    try:
        g = Graph.from_edges(
            len(records),
            edges,
            labels=[rec.id for rec in records],
            positions=[(rec.x, rec.y, rec.z) for rec in records],
        )
    except GraphError as exc:
        # n records with n-1 parent edges can only fail via a parent cycle
        raise ParseError(f"cycle implied by parent links ({exc})") from None
    return RootedTree(graph=g, root=index[roots[0].id])


def parse_edge_list(text: str, root: int | None = None) -> Union[RootedTree, Graph]:
    """Parse edge-list text: optional ``root <id>`` line, then ``u v`` lines.

    Returns a RootedTree when the graph is acyclic (root from the argument,
    else the header, else the smallest vertex id) and a plain Graph when
    cycles are present.  '#' starts a comment.  Raises ParseError on loops,
    duplicate edges, or disconnected input.
    """
    header_root: int | None = None
    raw_edges: list[tuple[int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "root":
            if len(parts) != 2:
                raise ParseError(f"line {lineno}: expected 'root <id>'")
            if header_root is not None:
                raise ParseError(f"line {lineno}: repeated root line")
            try:
                header_root = int(parts[1])
            except ValueError:
                raise ParseError(f"line {lineno}: malformed root id {parts[1]!r}") from None
            continue
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {lineno}: malformed edge {line!r}") from None
        if u < 0 or v < 0:
            raise ParseError(f"line {lineno}: negative vertex id")
        if u == v:
            raise ParseError(f"line {lineno}: loop edge at vertex {u}")
        raw_edges.append((lineno, u, v))

    if not raw_edges:
        if header_root is not None:
            # single-vertex tree: a root and no edges
            g = Graph.from_edges(1, [], labels=[header_root])
            return RootedTree(graph=g, root=0)
        raise ParseError("no edges found")

    ids = sorted({u for _, u, v in raw_edges} | {v for _, u, v in raw_edges})
    dense = {label: i for i, label in enumerate(ids)}
    seen: dict[frozenset[int], int] = {}
    edges = []
    for lineno, u, v in raw_edges:
        key = frozenset((u, v))
        if key in seen:
            raise ParseError(
                f"line {lineno}: duplicate edge {u}-{v} (first seen on line {seen[key]})"
            )
        seen[key] = lineno
        edges.append((dense[u], dense[v]))
    try:
        g = Graph.from_edges(len(ids), edges, labels=ids)
    except GraphError as exc:
        raise ParseError(str(exc)) from None

    if not g.is_tree():
        return g
    chosen = root if root is not None else header_root
    if chosen is None:
        chosen = ids[0]
    if chosen not in dense:
        raise ParseError(f"root {chosen} is not a vertex of the graph")
    return RootedTree(graph=g, root=dense[chosen])


def to_edge_list_text(obj: Union[RootedTree, Graph]) -> str:
    """Serialize to the edge-list format (labels preserved); parse-stable."""
    if isinstance(obj, RootedTree):
        g = obj.graph
        lines = [f"root {g.label_of(obj.root)}"]
    else:
        g = obj
        lines = []
    lines.extend(f"{g.label_of(u)} {g.label_of(v)}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class PathSpec:
    """Path graph on n vertices rooted at a 1-based position."""

    n: int
    root_position: int = 1


@dataclass(frozen=True)
class StarlikeSpec:
    """Starlike tree with k >= 3 branches of the given vertex counts."""

    branch_lengths: tuple[int, ...]


@dataclass(frozen=True)
class StarlikeUniformSpec:
    """Starlike tree with k branches of m vertices each (k=2 degenerates to a path)."""

    k: int
    m: int


@dataclass(frozen=True)
class RandomTreeSpec:
    """Seeded random tree grown by sequential random-parent attachment."""

    n: int
    seed: int
    spine_probability: float = 0.0


TreeSpec = Union[PathSpec, StarlikeSpec, StarlikeUniformSpec, RandomTreeSpec]


def make(spec: TreeSpec) -> RootedTree:
    """Construct the rooted tree described by a TreeSpec."""
    if isinstance(spec, PathSpec):
        return make_path(spec.n, spec.root_position)
    if isinstance(spec, StarlikeSpec):
        return make_starlike(spec.branch_lengths)
    if isinstance(spec, StarlikeUniformSpec):
        return make_starlike_uniform(spec.k, spec.m)
    if isinstance(spec, RandomTreeSpec):
        return make_random_tree(spec.n, spec.seed, spec.spine_probability)
    raise ValueError(f"unknown tree spec {spec!r}")


def make_path(n: int, root_position: int = 1) -> RootedTree:
    """Path graph P_n rooted at the given 1-based position."""
    if n < 1:
        raise ValueError("path needs n >= 1")
    if not (1 <= root_position <= n):
        raise ValueError(f"root position {root_position} outside 1..{n}")
    g = Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
    return RootedTree(graph=g, root=root_position - 1)


def make_starlike(branch_lengths: tuple[int, ...] | list[int]) -> RootedTree:
    """Starlike tree: one center of degree k >= 3, branch i a path of n_i vertices.

    Branch lengths are normalized to nonincreasing order.  Rooted at the center.
    """
    lengths = tuple(sorted(branch_lengths, reverse=True))
    if len(lengths) < 3:
        raise ValueError("starlike tree needs k >= 3 branches")
    if any(m < 1 for m in lengths):
        raise ValueError("every branch needs at least one vertex")
    return _star_of(lengths)


def make_starlike_uniform(k: int, m: int) -> RootedTree:
    """Uniform starlike tree: k branches of m vertices each, km+1 vertices total.

    k = 2 is permitted and degenerates to the path P_{2m+1} rooted at its center.
    """
    if k < 2:
        raise ValueError("uniform starlike tree needs k >= 2 branches")
    if m < 1:
        raise ValueError("branches need m >= 1 vertices")
    return _star_of((m,) * k)


def _star_of(lengths: tuple[int, ...]) -> RootedTree:
    edges = []
    nxt = 1
    for m in lengths:
        prev = 0
        for _ in range(m):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    g = Graph.from_edges(nxt, edges)
    return RootedTree(graph=g, root=0)


def make_random_tree(n: int, seed: int, spine_probability: float = 0.0) -> RootedTree:
    """Seeded random tree with exactly n vertices, rooted at 0.

    Vertex i attaches to a uniform random earlier vertex; with probability
    ``spine_probability`` the parent is instead drawn from the current
    trivial (non-root, degree-2) vertices, turning that vertex into a
    spine-bearing branch vertex.  Deterministic for a fixed seed.
    """
    if n < 1:
        raise ValueError("random tree needs n >= 1")
    if not (0.0 <= spine_probability <= 1.0):
        raise ValueError("spine probability must lie in [0, 1]")
    rng = random.Random(seed)
    degree = [0] * n
    trivial: set[int] = set()
    edges = []
    for i in range(1, n):
        if spine_probability > 0 and trivial and rng.random() < spine_probability:
            parent = rng.choice(sorted(trivial))
        else:
            parent = rng.randrange(i)
        edges.append((parent, i))
        degree[parent] += 1
        degree[i] += 1
        if parent != 0:
            if degree[parent] == 2:
                trivial.add(parent)
            else:
                trivial.discard(parent)
    g = Graph.from_edges(n, edges)
    return RootedTree(graph=g, root=0)
