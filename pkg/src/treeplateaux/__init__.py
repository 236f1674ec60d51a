"""Tree simplification and Laplacian eigenvalue-plateau analysis.

Simplifies rooted trees by contracting chains of non-root degree-2 vertices
(spines and the root's neighborhood preserved), computes Laplacian spectra,
and detects/certifies the plateau eigenvalue pair (3 -+ sqrt(5))/2 with the
pendant-chain multiplicity lower bound tau_vi, explicit eigenvectors, and an
exact-arithmetic multiplicity oracle.
"""

from .graph import (
    Graph,
    GraphError,
    NontrivialPair,
    RootedTree,
    ValidationReport,
    VertexClass,
    classify,
    nontrivial_pairs,
    validate,
    validate_adjacency,
)
from .ingest import (
    ParseError,
    PathSpec,
    RandomTreeSpec,
    StarlikeSpec,
    StarlikeUniformSpec,
    SwcRecord,
    TreeSpec,
    make,
    make_path,
    make_random_tree,
    make_starlike,
    make_starlike_uniform,
    parse_edge_list,
    parse_swc,
    to_edge_list_text,
)
from .simplify import (
    SimplificationResult,
    SimplificationStats,
    nontrivial_count,
    reduction_stats,
    simplify,
)
from .spectral import (
    LAMBDA_MINUS,
    LAMBDA_PLUS,
    Plateau,
    SizeCapError,
    Spectrum,
    detect_plateaux,
    eigen,
    laplacian,
    multiplicity,
    path_spectrum,
    spectrum_of,
    starlike_branch_eigenvalues,
)
from .exact import (
    PLATEAU_ROOT,
    QElem,
    bareiss_rank,
    plateau_polynomial_matrix,
    tree_eigenvalue_multiplicity,
)
from .plateaux import (
    ChainTriple,
    ConjectureReport,
    FariaReport,
    PendantStructure,
    PlateauCertificate,
    chain_triples,
    check_conjecture,
    construct_eigenvectors,
    counterexample_text,
    exact_plateau_multiplicity,
    faria_check,
    pendant_pj_counts,
    pendant_structure,
    verify_theorem,
)

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "GraphError",
    "NontrivialPair",
    "RootedTree",
    "ValidationReport",
    "VertexClass",
    "classify",
    "nontrivial_pairs",
    "validate",
    "validate_adjacency",
    "ParseError",
    "PathSpec",
    "RandomTreeSpec",
    "StarlikeSpec",
    "StarlikeUniformSpec",
    "SwcRecord",
    "TreeSpec",
    "make",
    "make_path",
    "make_random_tree",
    "make_starlike",
    "make_starlike_uniform",
    "parse_edge_list",
    "parse_swc",
    "to_edge_list_text",
    "SimplificationResult",
    "SimplificationStats",
    "nontrivial_count",
    "reduction_stats",
    "simplify",
    "LAMBDA_MINUS",
    "LAMBDA_PLUS",
    "Plateau",
    "SizeCapError",
    "Spectrum",
    "detect_plateaux",
    "eigen",
    "laplacian",
    "multiplicity",
    "path_spectrum",
    "spectrum_of",
    "starlike_branch_eigenvalues",
    "PLATEAU_ROOT",
    "QElem",
    "bareiss_rank",
    "plateau_polynomial_matrix",
    "tree_eigenvalue_multiplicity",
    "ChainTriple",
    "ConjectureReport",
    "FariaReport",
    "PendantStructure",
    "PlateauCertificate",
    "chain_triples",
    "check_conjecture",
    "construct_eigenvectors",
    "counterexample_text",
    "exact_plateau_multiplicity",
    "faria_check",
    "pendant_pj_counts",
    "pendant_structure",
    "verify_theorem",
]
