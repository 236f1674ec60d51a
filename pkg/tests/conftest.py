"""Shared independent oracles for the test suite.

These deliberately avoid the library's own elimination and spectral code
paths: plain Fraction-based Gaussian elimination for exact ranks and
multiplicities, and a contraction oracle built only from the maximal
trivial-chain decomposition.
"""

from __future__ import annotations

from fractions import Fraction

from treeplateaux import Graph, RootedTree, nontrivial_pairs


def fraction_rank(rows: list[list[Fraction]]) -> int:
    """Rank over Q by textbook Gaussian elimination on Fractions."""
    m = [[Fraction(x) for x in row] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    rank = 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pivot = m[r][c]
        for i in range(r + 1, nrows):
            if m[i][c] == 0:
                continue
            f = m[i][c] / pivot
            for j in range(c, ncols):
                m[i][j] -= f * m[r][j]
        rank += 1
        r += 1
        if r == nrows:
            break
    return rank


def laplacian_fractions(g: Graph) -> list[list[Fraction]]:
    L = [[Fraction(0)] * g.n for _ in range(g.n)]
    for v in range(g.n):
        L[v][v] = Fraction(g.degree(v))
        for u in g.neighbors(v):
            L[v][u] = Fraction(-1)
    return L


def rational_multiplicity_reference(g: Graph, lam: Fraction) -> int:
    """Exact multiplicity of a rational Laplacian eigenvalue: nullity(L - lam I)."""
    L = laplacian_fractions(g)
    for v in range(g.n):
        L[v][v] -= lam
    return g.n - fraction_rank(L)


def plateau_multiplicity_reference(g: Graph) -> int:
    """Exact common multiplicity of the conjugate pair via nullity(L^2 - 3L + I)."""
    L = laplacian_fractions(g)
    n = g.n
    M = [
        [
            sum(L[i][k] * L[k][j] for k in range(n)) - 3 * L[i][j] + (1 if i == j else 0)
            for j in range(n)
        ]
        for i in range(n)
    ]
    nullity = n - fraction_rank(M)
    assert nullity % 2 == 0
    return nullity // 2


def contraction_oracle_edges(tree: RootedTree):
    """Canonical contracted structure derived only from maximal trivial chains.

    Nodes are ("v", original_index) for nontrivial vertices and ("chain", i)
    for the single surviving mid of the i-th chain of length >= 2.
    """
    edges = set()
    for i, pair in enumerate(nontrivial_pairs(tree)):
        if pair.length == 1:
            edges.add(frozenset((("v", pair.u), ("v", pair.v))))
        else:
            edges.add(frozenset((("v", pair.u), ("chain", i))))
            edges.add(frozenset((("chain", i), ("v", pair.v))))
    return edges


def chain_interior_index(tree: RootedTree) -> dict[int, int]:
    """Map each trivial-chain interior vertex to its chain's index."""
    out: dict[int, int] = {}
    for i, pair in enumerate(nontrivial_pairs(tree)):
        for v in pair.path[1:-1]:
            out[v] = i
    return out
