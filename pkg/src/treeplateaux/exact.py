"""Exact multiplicity oracles: quadratic-field elimination and integer rank.

Two independent exact routes to Laplacian eigenvalue multiplicities:

* ``tree_eigenvalue_multiplicity`` diagonalizes L - lambda*I for a tree by
  congruence, eliminating leaves upward.  Arithmetic happens in the field
  Q(phi) with phi^2 = 3*phi - 1, whose elements are a + b*phi with rational
  a, b.  Only the defining relation is ever used, so one run yields the
  common multiplicity of both conjugate roots (3 +- sqrt(5))/2; rational
  lambda values (b = 0) work too.

* ``bareiss_rank`` runs fraction-free Gaussian elimination over the integers
  (arbitrary precision, exact divisions), giving rank and hence nullity of
  any integer matrix such as L^2 - 3L + I.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .graph import Graph


class QElem:
    """Element a + b*phi of Q(phi), phi^2 = 3*phi - 1."""

    __slots__ = ("a", "b")

    def __init__(self, a: Fraction | int, b: Fraction | int = 0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    def __add__(self, other: "QElem") -> "QElem":
        return QElem(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "QElem") -> "QElem":
        return QElem(self.a - other.a, self.b - other.b)

    def __mul__(self, other: "QElem") -> "QElem":
        # (a + b phi)(c + d phi) with phi^2 = 3 phi - 1
        a, b, c, d = self.a, self.b, other.a, other.b
        return QElem(a * c - b * d, a * d + b * c + 3 * b * d)

    def __neg__(self) -> "QElem":
        return QElem(-self.a, -self.b)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, QElem) and self.a == other.a and self.b == other.b

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def reciprocal(self) -> "QElem":
        # 1/(a + b phi) = ((a + 3b) - b phi) / N(a + b phi), N = a^2 + 3ab + b^2.
        # N = 0 only for the zero element since phi is irrational.
        a, b = self.a, self.b
        norm = a * a + 3 * a * b + b * b
        if norm == 0:
            raise ZeroDivisionError("reciprocal of zero element")
        return QElem((a + 3 * b) / norm, -b / norm)

    def __repr__(self) -> str:
        return f"QElem({self.a}, {self.b})"


# The common abstract root of x^2 - 3x + 1 (either embedding).
PLATEAU_ROOT = QElem(0, 1)


def tree_eigenvalue_multiplicity(g: Graph, lam: QElem, root: int = 0) -> int:
    """Exact multiplicity of ``lam`` as a Laplacian eigenvalue of a tree.

    Symmetric elimination of L - lam*I processed leaves-first: each vertex
    accumulates its pivot value d_v - lam - sum(1/a(child)) over nonzero
    children.  A zero child annihilates the vertex's remaining couplings
    (one +/- pivot pair, parent edge severed); extra zero children and a
    zero root pivot are the eigenvalue's multiplicity, by Sylvester inertia.
    """
    if not g.is_tree():
        raise ValueError("congruence multiplicity requires a tree")
    n = g.n
    parent = [-2] * n
    order = [root]
    parent[root] = -1
    for v in order:
        for u in g.neighbors(v):
            if parent[u] == -2:
                parent[u] = v
                order.append(u)

    pivot: list[QElem | None] = [None] * n
    severed = [False] * n
    zeros = 0
    for v in reversed(order):
        val = QElem(g.degree(v)) - lam
        zero_children = 0
        for c in g.neighbors(v):
            if parent[c] != v or severed[c]:
                continue
            child_pivot = pivot[c]
            if child_pivot.is_zero():
                zero_children += 1
            else:
                val = val - child_pivot.reciprocal()
        if zero_children:
            zeros += zero_children - 1
            severed[v] = True
        else:
            pivot[v] = val
    if not severed[root] and pivot[root].is_zero():
        zeros += 1
    return zeros


def bareiss_rank(matrix: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free Gaussian elimination.

    Entries stay exact minors of the input throughout, so every division by
    the previous pivot is exact over the integers.
    """
    m = [[int(x) for x in row] for row in matrix]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    rank = 0
    prev = 1
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        pivot = m[r][c]
        row_r = m[r]
        for i in range(r + 1, nrows):
            row_i = m[i]
            factor = row_i[c]
            for j in range(c + 1, ncols):
                row_i[j] = (pivot * row_i[j] - factor * row_r[j]) // prev
            row_i[c] = 0
        prev = pivot
        rank += 1
        r += 1
        if r == nrows:
            break
    return rank


def plateau_polynomial_matrix(g: Graph) -> list[list[int]]:
    """L^2 - 3L + I as exact integers; singular exactly on the plateau pair."""
    L = np.zeros((g.n, g.n), dtype=np.int64)
    for v in range(g.n):
        L[v, v] = g.degree(v)
        for u in g.neighbors(v):
            L[v, u] = -1
    M = L @ L - 3 * L + np.eye(g.n, dtype=np.int64)
    return M.tolist()


def plateau_nullity(g: Graph) -> int:
    """nullity(L^2 - 3L + I) over the rationals, via Bareiss rank."""
    return g.n - bareiss_rank(plateau_polynomial_matrix(g))
