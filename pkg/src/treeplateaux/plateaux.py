"""Pendant-chain structure and plateau-multiplicity certification.

A vertex of degree >= 3 that carries c >= 2 pendant length-2 chains
(branch -> degree-2 mid -> leaf) forces the two eigenvalues
LAMBDA_MINUS/LAMBDA_PLUS into the Laplacian spectrum with multiplicity at
least c - 1 each; summing over branch vertices gives the lower bound tau_vi.
This module computes that structure, builds the touching eigenvectors
explicitly, checks the bound together with the exact equal-multiplicity fact
(an integer characteristic polynomial with one conjugate root must contain
the other with equal multiplicity), and carries the pendant-path bookkeeping
for the Faria inequality and its length-j generalization.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exact import (
    PLATEAU_ROOT,
    bareiss_rank,
    plateau_polynomial_matrix,
    tree_eigenvalue_multiplicity,
)
from .graph import Graph
from .spectral import (
    DEFAULT_HALF_WIDTH,
    LAMBDA_MINUS,
    LAMBDA_PLUS,
    Spectrum,
    detect_plateaux,
    laplacian,
    multiplicity,
    spectrum_of,
)

RESIDUAL_BOUND = 1e-9


@dataclass(frozen=True)
class PendantStructure:
    """Degree-based pendant-chain classification of one graph.

    ``leaves`` are the degree-1 vertices; ``pendant_mids`` the degree-2
    vertices adjacent to a leaf; ``branch_vertices`` the degree->=3 vertices
    adjacent to a pendant mid (sorted by index).  ``chain_count[b]`` counts
    the pendant mids hanging off branch vertex b, and
    tau_vi = sum(chain_count[b] - 1).  ``anchored_mids``/``anchored_leaves``
    are the pendant mids attached to branch vertices and their leaves;
    ``rest`` is everything else.
    """

    leaves: tuple[int, ...]
    pendant_mids: tuple[int, ...]
    branch_vertices: tuple[int, ...]
    chain_count: dict[int, int]
    tau_vi: int
    kappa: int
    anchored_mids: tuple[int, ...]
    anchored_leaves: tuple[int, ...]
    rest: tuple[int, ...]


def pendant_structure(g: Graph) -> PendantStructure:
    """Compute the pendant-chain sets for a general graph."""
    deg = g.degrees()
    is_leaf = [d == 1 for d in deg]
    leaves = tuple(v for v in range(g.n) if is_leaf[v])
    is_mid = [
        deg[v] == 2 and any(is_leaf[u] for u in g.neighbors(v)) for v in range(g.n)
    ]
    pendant_mids = tuple(v for v in range(g.n) if is_mid[v])
    chain_count: dict[int, int] = {}
    for v in range(g.n):
        if deg[v] < 3:
            continue
        c = sum(1 for u in g.neighbors(v) if is_mid[u])
        if c:
            chain_count[v] = c
    branch_vertices = tuple(sorted(chain_count))
    branch_set = set(branch_vertices)
    anchored_mids = tuple(
        m for m in pendant_mids if any(u in branch_set for u in g.neighbors(m))
    )
    anchored_leaves = tuple(
        sorted(u for m in anchored_mids for u in g.neighbors(m) if is_leaf[u])
    )
    inside = branch_set | set(anchored_mids) | set(anchored_leaves)
    rest = tuple(v for v in range(g.n) if v not in inside)
    return PendantStructure(
        leaves=leaves,
        pendant_mids=pendant_mids,
        branch_vertices=branch_vertices,
        chain_count=chain_count,
        tau_vi=sum(c - 1 for c in chain_count.values()),
        kappa=len(branch_vertices),
        anchored_mids=anchored_mids,
        anchored_leaves=anchored_leaves,
        rest=rest,
    )


@dataclass(frozen=True)
class ChainTriple:
    """One pendant chain: branch -> mid (degree 2) -> leaf (degree 1)."""

    branch: int
    mid: int
    leaf: int


def chain_triples(ps: PendantStructure, g: Graph) -> dict[int, list[ChainTriple]]:
    """The chain_count[b] pendant chains of each branch vertex, sorted by mid.

    A pendant mid has degree 2 with one leaf neighbor, so it belongs to at
    most one branch vertex; every anchored mid appears in exactly one triple.
    """
    mids = set(ps.pendant_mids)
    out: dict[int, list[ChainTriple]] = {}
    for b in ps.branch_vertices:
        triples = []
        for m in g.neighbors(b):
            if m not in mids:
                continue
            others = [u for u in g.neighbors(m) if u != b]
            assert len(others) == 1 and g.degree(others[0]) == 1
            triples.append(ChainTriple(branch=b, mid=m, leaf=others[0]))
        triples.sort(key=lambda t: t.mid)
        assert len(triples) == ps.chain_count[b]
        out[b] = triples
    return out


def construct_eigenvectors(g: Graph, lam: float) -> list[np.ndarray]:
    """Explicit eigenvectors of L for a plateau eigenvalue, one per surplus chain.

    For each branch vertex with c >= 2 chains, chain 1 (smallest mid index)
    carries (-1/(2-lam), -1) on its (mid, leaf) and chain L+1 carries the
    negated pair, L = 1..c-1; all other entries are zero.  Entries sum to
    zero, the branch row contributes 0 = lam*0, and the tau_vi vectors for a
    fixed lam are linearly independent.
    """
    if abs(lam * lam - 3.0 * lam + 1.0) > 1e-12:
        raise ValueError("eigenvalue must satisfy x^2 - 3x + 1 = 0 within 1e-12")
    ps = pendant_structure(g)
    triples = chain_triples(ps, g)
    scale = 1.0 / (2.0 - lam)
    vectors: list[np.ndarray] = []
    for b in ps.branch_vertices:
        chain = triples[b]
        if len(chain) < 2:
            continue
        first = chain[0]
        for other in chain[1:]:
            x = np.zeros(g.n)
            x[first.mid] = -scale
            x[first.leaf] = -1.0
            x[other.mid] = scale
            x[other.leaf] = 1.0
            vectors.append(x)
    return vectors


def exact_plateau_multiplicity(g: Graph, method: str = "auto") -> int:
    """Common multiplicity of the two plateau eigenvalues, in exact arithmetic.

    Trees use congruence diagonalization over Q(phi); general graphs use
    integer Bareiss rank of L^2 - 3L + I, whose kernel is the direct sum of
    the two conjugate eigenspaces, so its nullity is even and halves to the
    shared multiplicity.
    """
    if method not in ("auto", "congruence", "bareiss"):
        raise ValueError(f"unknown method {method!r}")
    if method == "auto":
        method = "congruence" if g.is_tree() else "bareiss"
    if method == "congruence":
        return tree_eigenvalue_multiplicity(g, PLATEAU_ROOT)
    nullity = g.n - bareiss_rank(plateau_polynomial_matrix(g))
    if nullity % 2:
        raise ArithmeticError(
            f"plateau nullity {nullity} is odd; conjugate multiplicities must match"
        )
    return nullity // 2


@dataclass
class PlateauCertificate:
    """Windowed, exact, and structural evidence for the plateau theorem.

    ``eigenvectors`` holds the constructed vectors for lambda_minus followed
    by those for lambda_plus; ``independent_rank`` is the rank of either
    stack (they coincide).  ``violations`` is empty iff every certificate
    invariant held; ``warnings`` records benign diagnostics.
    """

    lambda_minus: float
    lambda_plus: float
    m_minus: int
    m_plus: int
    m_exact: int
    tau_vi: int
    eigenvectors: list[np.ndarray]
    max_residual: float
    independent_rank: int
    warnings: tuple[str, ...] = ()
    violations: tuple[str, ...] = ()

    @property
    def holds(self) -> bool:
        return not self.violations


def verify_theorem(
    g: Graph,
    half_width: float = DEFAULT_HALF_WIDTH,
    spectrum: Spectrum | None = None,
) -> PlateauCertificate:
    """Assemble and check a PlateauCertificate for any valid graph.

    Checks: the windowed multiplicities of the two eigenvalues agree with
    each other and with the exact oracle (exact wins on disagreement, with a
    warning naming the window); the multiplicity dominates tau_vi; every
    constructed eigenvector has residual <= 1e-9; and each stack of
    constructed vectors has rank exactly tau_vi.
    """
    ps = pendant_structure(g)
    s = spectrum if spectrum is not None else spectrum_of(g)
    m_minus = multiplicity(s, LAMBDA_MINUS, half_width)
    m_plus = multiplicity(s, LAMBDA_PLUS, half_width)
    m_exact = exact_plateau_multiplicity(g)

    L = laplacian(g).astype(float)
    vectors: list[np.ndarray] = []
    ranks: list[int] = []
    max_residual = 0.0
    for lam in (LAMBDA_MINUS, LAMBDA_PLUS):
        vecs = construct_eigenvectors(g, lam)
        for x in vecs:
            max_residual = max(max_residual, float(np.abs(L @ x - lam * x).max()))
        ranks.append(int(np.linalg.matrix_rank(np.array(vecs))) if vecs else 0)
        vectors.extend(vecs)

    violations: list[str] = []
    warnings: list[str] = []
    if m_minus != m_plus:
        violations.append(
            f"window multiplicities differ: m_minus={m_minus} m_plus={m_plus}"
        )
    for name, m_window in (("lambda_minus", m_minus), ("lambda_plus", m_plus)):
        if m_window != m_exact:
            violations.append(
                f"window count {m_window} at {name} != exact multiplicity {m_exact}"
            )
            warnings.append(
                f"window of half-width {half_width:g} at {name} disagrees with the"
                f" exact oracle; the exact value {m_exact} wins"
            )
    if m_exact < ps.tau_vi:
        violations.append(
            f"exact multiplicity {m_exact} below pendant-chain bound {ps.tau_vi}"
        )
    if max_residual > RESIDUAL_BOUND:
        violations.append(
            f"constructed eigenvector residual {max_residual:.3e} > {RESIDUAL_BOUND:g}"
        )
    if ranks != [ps.tau_vi, ps.tau_vi]:
        violations.append(
            f"constructed vector ranks {ranks} != tau_vi {ps.tau_vi}"
        )
    return PlateauCertificate(
        lambda_minus=LAMBDA_MINUS,
        lambda_plus=LAMBDA_PLUS,
        m_minus=m_minus,
        m_plus=m_plus,
        m_exact=m_exact,
        tau_vi=ps.tau_vi,
        eigenvectors=vectors,
        max_residual=max_residual,
        independent_rank=ranks[0],
        warnings=tuple(warnings),
        violations=tuple(violations),
    )


@dataclass(frozen=True)
class FariaReport:
    """Pendant count p, pendant-neighbor count q, and the multiplicity of 1."""

    pendant_count: int
    pendant_neighbor_count: int
    m_one: int
    holds: bool


def faria_check(
    g: Graph,
    half_width: float = DEFAULT_HALF_WIDTH,
    spectrum: Spectrum | None = None,
) -> FariaReport:
    """Check p - q <= m(1): pendants minus pendant neighbors vs multiplicity of 1."""
    deg = g.degrees()
    p = sum(1 for d in deg if d == 1)
    q = sum(
        1 for v in range(g.n) if any(deg[u] == 1 for u in g.neighbors(v))
    )
    s = spectrum if spectrum is not None else spectrum_of(g)
    m_one = multiplicity(s, 1.0, half_width)
    return FariaReport(
        pendant_count=p,
        pendant_neighbor_count=q,
        m_one=m_one,
        holds=p - q <= m_one,
    )


def pendant_pj_counts(g: Graph, j: int) -> tuple[int, int]:
    """Counts (p_j, q_j) of pendant length-j chain vertices and their anchors.

    A degree-2 vertex v counts toward p_j when it is adjacent to a vertex u
    of degree > 2 and lies on the path of length j from u to a pendant
    vertex w whose interior is all degree-2 (so u, w are a neighboring
    nontrivial pair); q_j counts the distinct anchors u.  j = 1 is degenerate
    (no degree-2 vertex fits on a length-1 path), hence j >= 2 is required.
    """
    if j < 2:
        raise ValueError("pendant path counts require j >= 2")
    deg = g.degrees()
    p = 0
    anchors: set[int] = set()
    for u in range(g.n):
        if deg[u] <= 2:
            continue
        for v in g.neighbors(u):
            if deg[v] != 2:
                continue
            prev, cur, length = u, v, 1
            while deg[cur] == 2:
                a, b = g.neighbors(cur)
                prev, cur = cur, (b if a == prev else a)
                length += 1
            if length == j and deg[cur] == 1:
                p += 1
                anchors.add(u)
    return p, len(anchors)


@dataclass(frozen=True)
class ConjectureReport:
    """Whether p_j - q_j is dominated by some eigenvalue's multiplicity."""

    j: int
    p_j: int
    q_j: int
    max_multiplicity: int
    witness_value: float | None
    holds: bool


def check_conjecture(
    g: Graph,
    j: int,
    half_width: float = DEFAULT_HALF_WIDTH,
    spectrum: Spectrum | None = None,
) -> ConjectureReport:
    """Check p_j - q_j <= max eigenvalue multiplicity, reporting a witness."""
    p_j, q_j = pendant_pj_counts(g, j)
    s = spectrum if spectrum is not None else spectrum_of(g)
    clusters = detect_plateaux(s, min_multiplicity=1, half_width=half_width)
    best = max(clusters, key=lambda c: (c.multiplicity, -c.value))
    holds = p_j - q_j <= best.multiplicity
    return ConjectureReport(
        j=j,
        p_j=p_j,
        q_j=q_j,
        max_multiplicity=best.multiplicity,
        witness_value=best.value if holds else None,
        holds=holds,
    )


def counterexample_text(g: Graph, invariant: str, root: int | None = None) -> str:
    """Edge list + root + failing invariant, replayable by parse_edge_list."""
    lines = ["# treeplateaux counterexample v1", f"# invariant: {invariant}"]
    if root is not None:
        lines.append(f"root {g.label_of(root)}")
    lines.extend(f"{g.label_of(u)} {g.label_of(v)}" for u, v in g.edges())
    return "\n".join(lines) + "\n"
