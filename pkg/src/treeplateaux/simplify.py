"""Spine-preserving tree simplification.

A single pass over vertices in ascending index order removes each trivial
(non-root, degree-2) vertex that has a degree-2 neighbor, reconnecting its
two neighbors directly.  The root and every vertex adjacent to the root are
never removed.  Each maximal chain of trivial vertices between nontrivial
endpoints collapses to exactly one surviving mid vertex, so non-spine paths
end up with length 1 or 2 while pendant (spine) edges stay intact.  Survivor
degrees never change, hence the nontrivial vertex count is preserved.

The pass mutates a private working copy; inputs are never modified.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, RootedTree


@dataclass(frozen=True)
class SimplificationStats:
    original_vertex_count: int
    simplified_vertex_count: int
    removed_count: int
    reduction_percent: float
    nontrivial_count_before: int
    nontrivial_count_after: int


@dataclass(frozen=True)
class SimplificationResult:
    tree: RootedTree
    stats: SimplificationStats
    # surviving original index -> new dense index
    index_map: dict[int, int]


def nontrivial_count(tree: RootedTree) -> int:
    """Number of vertices that are the root or have degree != 2."""
    return sum(
        1
        for v in range(tree.graph.n)
        if v == tree.root or tree.graph.degree(v) != 2
    )


def simplify(tree: RootedTree) -> SimplificationResult:
    """Contract trivial chains in one index-order pass.

    Visiting v (skipping the root, already-deleted vertices, vertices of
    degree != 2, and vertices adjacent to the root): if either neighbor of v
    has degree 2, delete v and join its two neighbors.  The lower-index
    neighbor is checked first; at most one deletion happens per visit.
    Surviving vertices are renumbered by original index order.
    """
    g = tree.graph
    n = g.n
    root = tree.root
    adj: list[set[int]] = [set(nbrs) for nbrs in g.adjacency]
    alive = [True] * n

    for v in range(n):
        if v == root or not alive[v]:
            continue
        if len(adj[v]) != 2:
            continue
        u, w = sorted(adj[v])
        if u == root or w == root:
            continue
        if len(adj[u]) == 2 or len(adj[w]) == 2:
            adj[u].discard(v)
            adj[w].discard(v)
            adj[v].clear()
            adj[u].add(w)
            adj[w].add(u)
            alive[v] = False

    index_map: dict[int, int] = {}
    for v in range(n):
        if alive[v]:
            index_map[v] = len(index_map)
    edges = [
        (index_map[u], index_map[v])
        for u in range(n)
        if alive[u]
        for v in adj[u]
        if u < v
    ]
    survivors = sorted(index_map)
    labels = None if g.labels is None else [g.labels[v] for v in survivors]
    positions = None if g.positions is None else [g.positions[v] for v in survivors]
    out_graph = Graph.from_edges(len(survivors), edges, labels=labels, positions=positions)
    out_tree = RootedTree(graph=out_graph, root=index_map[root])
    return SimplificationResult(
        tree=out_tree,
        stats=reduction_stats(tree, out_tree),
        index_map=index_map,
    )


def reduction_stats(before: RootedTree, after: RootedTree) -> SimplificationStats:
    """Vertex-count statistics for a simplification (percent per tree)."""
    original = before.graph.n
    simplified = after.graph.n
    removed = original - simplified
    return SimplificationStats(
        original_vertex_count=original,
        simplified_vertex_count=simplified,
        removed_count=removed,
        reduction_percent=100.0 * removed / original,
        nontrivial_count_before=nontrivial_count(before),
        nontrivial_count_after=nontrivial_count(after),
    )
