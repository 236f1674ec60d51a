"""Core graph and rooted-tree types, validation, and vertex classification.

Graphs are simple, undirected, unweighted, and connected, stored as dense
vertex indices 0..n-1 with sorted adjacency tuples.  Original external ids
(e.g. file ids) ride along as optional provenance labels, and 3D sample
coordinates as optional positions.  Instances are immutable after
construction and safe to share across threads.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence


class GraphError(ValueError):
    """A graph or tree failed a structural invariant."""


@dataclass(frozen=True)
class ValidationReport:
    """Pass/fail per structural invariant; ``passed`` iff all hold."""

    simple: bool
    symmetric: bool
    connected: bool
    problems: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return self.simple and self.symmetric and self.connected


def validate_adjacency(adjacency: Sequence[Iterable[int]]) -> ValidationReport:
    """Check raw adjacency data for simplicity, symmetry, and connectivity.

    Accepts data that may violate the invariants (unlike the constructors,
    which reject it); used both as the report-style check and internally.
    """
    n = len(adjacency)
    problems: list[str] = []
    neighbor_sets = []
    simple = True
    symmetric = True
    for v, nbrs in enumerate(adjacency):
        nbrs = list(nbrs)
        sset = set(nbrs)
        if v in sset:
            simple = False
            problems.append(f"loop edge at vertex {v}")
        if len(sset) != len(nbrs):
            simple = False
            problems.append(f"duplicate edges at vertex {v}")
        for u in sset:
            if not (0 <= u < n):
                symmetric = False
                problems.append(f"vertex {v} references out-of-range neighbor {u}")
        neighbor_sets.append(sset)
    for v, sset in enumerate(neighbor_sets):
        for u in sset:
            if 0 <= u < n and v not in neighbor_sets[u]:
                symmetric = False
                problems.append(f"edge {v}-{u} not mirrored")
    connected = _is_connected(neighbor_sets)
    if not connected:
        problems.append("graph is disconnected")
    return ValidationReport(simple=simple, symmetric=symmetric,
                            connected=connected, problems=tuple(problems))


def _is_connected(neighbor_sets: Sequence[set[int]]) -> bool:
    n = len(neighbor_sets)
    if n == 0:
        return False
    seen = [False] * n
    stack = [0]
    seen[0] = True
    count = 1
    while stack:
        v = stack.pop()
        for u in neighbor_sets[v]:
            if 0 <= u < n and not seen[u]:
                seen[u] = True
                count += 1
                stack.append(u)
    return count == n


@dataclass(frozen=True)
class Graph:
    """Simple undirected connected graph over dense vertex indices.

    ``adjacency[v]`` is the sorted tuple of neighbors of ``v``; ``labels``
    optionally maps each dense index back to an external id, and
    ``positions`` optionally carries (x, y, z) sample coordinates.
    """

    adjacency: tuple[tuple[int, ...], ...]
    labels: tuple[int, ...] | None = None
    positions: tuple[tuple[float, float, float], ...] | None = None

    def __post_init__(self) -> None:
        report = validate_adjacency(self.adjacency)
        if not report.passed:
            raise GraphError("invalid graph: " + "; ".join(report.problems))
        if self.labels is not None and len(self.labels) != self.n:
            raise GraphError("labels length does not match vertex count")
        if self.positions is not None and len(self.positions) != self.n:
            raise GraphError("positions length does not match vertex count")

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        labels: Sequence[int] | None = None,
        positions: Sequence[tuple[float, float, float]] | None = None,
    ) -> "Graph":
        """Build a graph from an edge list, rejecting loops and duplicates."""
        if n < 1:
            raise GraphError("graph needs at least one vertex")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"loop edge at vertex {u}")
            if v in nbrs[u]:
                raise GraphError(f"duplicate edge ({u},{v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(
            adjacency=tuple(tuple(sorted(s)) for s in nbrs),
            labels=None if labels is None else tuple(labels),
            positions=None if positions is None else tuple(tuple(p) for p in positions),
        )

    @property
    def n(self) -> int:
        return len(self.adjacency)

    @property
    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degrees(self) -> list[int]:
        return [len(nbrs) for nbrs in self.adjacency]

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) with u < v, sorted."""
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def is_tree(self) -> bool:
        return self.edge_count == self.n - 1

    def label_of(self, v: int) -> int:
        return v if self.labels is None else self.labels[v]


def validate(g: Graph) -> ValidationReport:
    """Report-style invariant check for a constructed graph."""
    return validate_adjacency(g.adjacency)


@dataclass(frozen=True)
class RootedTree:
    """A tree (|E| = |V|-1, connected) with a distinguished root vertex."""

    graph: Graph
    root: int

    def __post_init__(self) -> None:
        if not (0 <= self.root < self.graph.n):
            raise GraphError(f"root {self.root} out of range")
        if not self.graph.is_tree():
            raise GraphError(
                f"not a tree: {self.graph.edge_count} edges for {self.graph.n} vertices"
            )

    @property
    def n(self) -> int:
        return self.graph.n


class VertexClass(enum.Enum):
    LEAF = "leaf"
    TRIVIAL = "trivial"
    BRANCH = "branch"
    ROOT = "root"


def classify(tree: RootedTree) -> dict[int, VertexClass]:
    """Assign every vertex exactly one class.

    The root is ROOT regardless of degree; otherwise degree 1 is LEAF,
    degree 2 is TRIVIAL, and degree >= 3 is BRANCH.
    """
    out: dict[int, VertexClass] = {}
    for v in range(tree.graph.n):
        if v == tree.root:
            out[v] = VertexClass.ROOT
        else:
            d = tree.graph.degree(v)
            if d == 1:
                out[v] = VertexClass.LEAF
            elif d == 2:
                out[v] = VertexClass.TRIVIAL
            else:
                out[v] = VertexClass.BRANCH
    return out


def trivial_mask(tree: RootedTree) -> list[bool]:
    """``mask[v]`` iff v is a non-root vertex of degree exactly 2."""
    return [
        v != tree.root and tree.graph.degree(v) == 2 for v in range(tree.graph.n)
    ]


@dataclass(frozen=True)
class NontrivialPair:
    """Two nontrivial vertices joined by a path of all-trivial interior.

    Canonical orientation: ``u`` is the smaller endpoint index and ``path``
    runs from u to v; ``length`` counts edges.
    """

    u: int
    v: int
    path: tuple[int, ...]
    length: int


def nontrivial_pairs(tree: RootedTree) -> list[NontrivialPair]:
    """All maximal trivial-interior paths, each reported exactly once.

    The reported paths are edge-disjoint and together cover every edge.
    """
    g = tree.graph
    triv = trivial_mask(tree)
    seen: set[tuple[int, ...]] = set()
    pairs: list[NontrivialPair] = []
    for u in range(g.n):
        if triv[u]:
            continue
        for first in g.neighbors(u):
            path = [u]
            prev, cur = u, first
            while triv[cur]:
                path.append(cur)
                a, b = g.neighbors(cur)
                prev, cur = cur, (b if a == prev else a)
            path.append(cur)
            if path[0] > path[-1]:
                path.reverse()
            key = tuple(path)
            if key in seen:
                continue
            seen.add(key)
            pairs.append(
                NontrivialPair(u=key[0], v=key[-1], path=key, length=len(key) - 1)
            )
    pairs.sort(key=lambda p: p.path)
    return pairs
