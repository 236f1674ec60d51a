"""Laplacian assembly, dense symmetric eigendecomposition, and plateau detection.

The two plateau eigenvalues are the roots of x^2 - 3x + 1:

    LAMBDA_MINUS = (3 - sqrt(5)) / 2 = 2 - 2 cos(pi/5)  ~ 0.381966
    LAMBDA_PLUS  = (3 + sqrt(5)) / 2 = 2 - 2 cos(3pi/5) ~ 2.618034

They satisfy LAMBDA_MINUS + LAMBDA_PLUS = 3 and LAMBDA_MINUS * LAMBDA_PLUS = 1
exactly.  All functions here are pure; a batch runner may decompose distinct
graphs in parallel.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from .graph import Graph

LAMBDA_MINUS = (3.0 - math.sqrt(5.0)) / 2.0
LAMBDA_PLUS = (3.0 + math.sqrt(5.0)) / 2.0

DEFAULT_HALF_WIDTH = 1e-10

SIZE_CAP_ENV = "TREEPLATEAUX_MAX_VERTICES"
DEFAULT_SIZE_CAP = 10000


class SizeCapError(ValueError):
    """Matrix dimension exceeds the configured desk-scale cap."""


def size_cap() -> int:
    raw = os.environ.get(SIZE_CAP_ENV)
    if raw is None:
        return DEFAULT_SIZE_CAP
    try:
        return int(raw)
    except ValueError:
        return DEFAULT_SIZE_CAP


def laplacian(g: Graph) -> np.ndarray:
    """Dense integer Laplacian: degrees on the diagonal, -1 per edge."""
    n = g.n
    L = np.zeros((n, n), dtype=np.int64)
    for v in range(n):
        L[v, v] = g.degree(v)
        for u in g.neighbors(v):
            L[v, u] = -1
    return L


@dataclass
class Spectrum:
    """Sorted Laplacian eigenvalues with optional orthonormal eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None
    solve_tolerance: float

    @property
    def n(self) -> int:
        return len(self.eigenvalues)


def eigen(L: np.ndarray, want_vectors: bool = False, cap: int | None = None) -> Spectrum:
    """Full symmetric eigendecomposition of a Laplacian matrix.

    Eigenvalues come back sorted ascending.  When vectors are requested the
    per-pair residual ||Lx - lambda x||_inf is checked against
    1e-9 * max(1, lambda_max).  Raises SizeCapError beyond the desk-scale cap
    (TREEPLATEAUX_MAX_VERTICES, default 10000).
    """
    n = L.shape[0]
    if n < 1:
        raise ValueError("empty matrix")
    limit = size_cap() if cap is None else cap
    if n > limit:
        raise SizeCapError(f"matrix dimension {n} exceeds cap {limit}")
    A = np.asarray(L, dtype=np.float64)
    if want_vectors:
        values, vectors = np.linalg.eigh(A)
        residual = np.abs(A @ vectors - vectors * values).max()
        allowed = 1e-9 * max(1.0, float(values[-1]))
        if residual > allowed:
            raise ArithmeticError(
                f"eigenpair residual {residual:.3e} exceeds {allowed:.3e}"
            )
    else:
        values = np.linalg.eigvalsh(A)
        vectors = None
    order = np.argsort(values, kind="stable")
    values = values[order]
    if vectors is not None:
        vectors = vectors[:, order]
    return Spectrum(
        eigenvalues=values,
        eigenvectors=vectors,
        solve_tolerance=1e-10 * max(1, n),
    )


def spectrum_of(g: Graph, want_vectors: bool = False) -> Spectrum:
    """Convenience wrapper: eigen(laplacian(g))."""
    return eigen(laplacian(g), want_vectors=want_vectors)


def multiplicity(s: Spectrum, target: float, half_width: float = DEFAULT_HALF_WIDTH) -> int:
    """Count eigenvalues inside [target - half_width, target + half_width].

    This is the windowed multiplicity convention; it doubles as the interval
    count m_G(I) for I = [target - half_width, target + half_width].
    """
    if half_width <= 0:
        raise ValueError("half_width must be positive")
    lo = np.searchsorted(s.eigenvalues, target - half_width, side="left")
    hi = np.searchsorted(s.eigenvalues, target + half_width, side="right")
    return int(hi - lo)


def path_spectrum(n: int) -> np.ndarray:
    """Closed-form Laplacian spectrum of the path P_n: 2 - 2 cos(k pi / n)."""
    if n < 1:
        raise ValueError("path spectrum needs n >= 1")
    return np.sort(2.0 - 2.0 * np.cos(np.arange(n) * np.pi / n))


def starlike_branch_eigenvalues(k: int, m: int) -> list[tuple[float, int]]:
    """Closed-form branch eigenvalues of the uniform starlike tree S(k.m).

    Returns the values 2 + 2 cos(p pi / (2m+1)) for p = 2, 4, ..., 2m (sorted
    ascending), each carrying multiplicity k - 1.
    """
    if k < 2:
        raise ValueError("starlike branch eigenvalues need k >= 2")
    if m < 1:
        raise ValueError("starlike branch eigenvalues need m >= 1")
    values = [2.0 + 2.0 * math.cos(p * math.pi / (2 * m + 1)) for p in range(2, 2 * m + 1, 2)]
    return [(value, k - 1) for value in sorted(values)]


@dataclass(frozen=True)
class Plateau:
    """A run of >= min_multiplicity near-equal eigenvalues in the sorted list.

    ``start``/``stop`` index the half-open member range; ``value`` is the
    cluster mean.
    """

    value: float
    multiplicity: int
    start: int
    stop: int


def detect_plateaux(
    s: Spectrum,
    min_multiplicity: int = 2,
    half_width: float = DEFAULT_HALF_WIDTH,
) -> list[Plateau]:
    """Greedy left-to-right clustering of the sorted eigenvalues.

    Consecutive eigenvalues differing by at most 2 * half_width join the same
    cluster; clusters of size >= min_multiplicity are reported.
    """
    if min_multiplicity < 1:
        raise ValueError("min_multiplicity must be >= 1")
    eigs = s.eigenvalues
    out: list[Plateau] = []
    start = 0
    for i in range(1, len(eigs) + 1):
        if i < len(eigs) and eigs[i] - eigs[i - 1] <= 2.0 * half_width:
            continue
        size = i - start
        if size >= min_multiplicity:
            out.append(
                Plateau(
                    value=float(eigs[start:i].mean()),
                    multiplicity=size,
                    start=start,
                    stop=i,
                )
            )
        start = i
    return out
