"""Figure rendering for the CLI report paths (PNG files, headless backend).

Trees with SWC coordinates are drawn in their measured 2D projection;
synthetic trees fall back to a deterministic layered layout.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence, Union

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)
import numpy as np  # noqa: E402

from .graph import RootedTree  # noqa: E402
from .spectral import Plateau  # noqa: E402


def save_eigenvalue_plot(
    eigenvalues: Sequence[float],
    plateaux: Sequence[Plateau],
    path: Union[str, Path],
    title: str = "Laplacian eigenvalue distribution",
) -> Path:
    """Index-vs-value scatter of the sorted spectrum with plateaux marked."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    ax.plot(range(len(eigenvalues)), eigenvalues, ".", markersize=4, color="tab:blue")
    for p in plateaux:
        ax.axhline(p.value, color="tab:red", linewidth=0.8, alpha=0.6)
        ax.annotate(
            f"{p.value:.4f} (x{p.multiplicity})",
            xy=(0, p.value),
            xytext=(4, 3),
            textcoords="offset points",
            fontsize=8,
            color="tab:red",
        )
    ax.set_xlabel("index")
    ax.set_ylabel("eigenvalue")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_degree_histogram(
    original: dict[int, int],
    simplified: dict[int, int] | None,
    path: Union[str, Path],
    title: str = "Degree histogram",
) -> Path:
    """Bar chart of degree counts, original vs simplified side by side."""
    path = Path(path)
    degrees = sorted(set(original) | set(simplified or {}))
    xs = np.arange(len(degrees))
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    width = 0.4 if simplified is not None else 0.8
    ax.bar(xs - (width / 2 if simplified is not None else 0),
           [original.get(d, 0) for d in degrees],
           width=width, label="original", color="tab:blue")
    if simplified is not None:
        ax.bar(xs + width / 2, [simplified.get(d, 0) for d in degrees],
               width=width, label="simplified", color="tab:orange")
        ax.legend()
    ax.set_xticks(xs, [str(d) for d in degrees])
    ax.set_xlabel("degree")
    ax.set_ylabel("vertex count")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def tree_layout(tree: RootedTree) -> dict[int, tuple[float, float]]:
    """Deterministic layered layout: leaves in DFS order, parents centered."""
    g = tree.graph
    if g.positions is not None:
        return {v: (g.positions[v][0], g.positions[v][1]) for v in range(g.n)}
    root = tree.root
    parent = [-2] * g.n
    parent[root] = -1
    order = [root]
    depth = [0] * g.n
    stack = [root]
    while stack:
        v = stack.pop()
        for u in reversed(g.neighbors(v)):
            if parent[u] == -2:
                parent[u] = v
                depth[u] = depth[v] + 1
                order.append(u)
                stack.append(u)
    xs: dict[int, float] = {}
    next_leaf = 0.0
    children: dict[int, list[int]] = {v: [] for v in range(g.n)}
    dfs_order: list[int] = []
    stack = [root]
    while stack:
        v = stack.pop()
        dfs_order.append(v)
        kids = [u for u in g.neighbors(v) if parent[u] == v]
        children[v] = kids
        stack.extend(reversed(kids))
    for v in reversed(dfs_order):
        if not children[v]:
            xs[v] = next_leaf
            next_leaf += 1.0
        else:
            xs[v] = sum(xs[u] for u in children[v]) / len(children[v])
    return {v: (xs[v], -float(depth[v])) for v in range(g.n)}


def save_tree_plot(
    tree: RootedTree,
    path: Union[str, Path],
    title: str = "Tree",
    overlay: RootedTree | None = None,
) -> Path:
    """Draw a tree; an overlay (e.g. the simplified tree) is drawn on top."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(7.0, 6.0))
    _draw(ax, tree, color="tab:blue", node_size=6, alpha=0.8,
          label="original" if overlay is not None else None)
    if overlay is not None:
        _draw(ax, overlay, color="tab:red", node_size=14, alpha=0.9, label="simplified")
        ax.legend()
    ax.set_title(title)
    ax.set_aspect("equal", adjustable="datalim")
    ax.axis("off")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def _draw(ax, tree: RootedTree, color: str, node_size: float, alpha: float,
          label: str | None) -> None:
    pos = tree_layout(tree)
    g = tree.graph
    for u, v in g.edges():
        ax.plot([pos[u][0], pos[v][0]], [pos[u][1], pos[v][1]],
                color=color, linewidth=0.8, alpha=alpha, zorder=1)
    ax.scatter([pos[v][0] for v in range(g.n)], [pos[v][1] for v in range(g.n)],
               s=node_size, color=color, alpha=alpha, zorder=2, label=label)
    rx, ry = pos[tree.root]
    ax.scatter([rx], [ry], s=node_size * 6, facecolors="none",
               edgecolors="black", zorder=3)


def save_reduction_plot(
    reductions: Sequence[float],
    path: Union[str, Path],
    title: str = "Vertex reduction per tree",
) -> Path:
    """Histogram of per-tree reduction percentages across a corpus."""
    path = Path(path)
    values = list(reductions)
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    ax.hist(values, bins=min(20, max(5, len(values))),
            color="tab:blue", edgecolor="white")
    ax.set_xlabel("reduction (%)")
    ax.set_ylabel("trees")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
