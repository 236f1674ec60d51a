import math
from fractions import Fraction

import numpy as np
import pytest

from treeplateaux import (
    LAMBDA_MINUS,
    LAMBDA_PLUS,
    QElem,
    SizeCapError,
    detect_plateaux,
    eigen,
    laplacian,
    make_path,
    make_random_tree,
    make_starlike_uniform,
    multiplicity,
    path_spectrum,
    spectrum_of,
    starlike_branch_eigenvalues,
)

from conftest import rational_multiplicity_reference


def test_plateau_constants():
    assert LAMBDA_MINUS == pytest.approx((3 - math.sqrt(5)) / 2)
    assert LAMBDA_PLUS == pytest.approx((3 + math.sqrt(5)) / 2)
    assert LAMBDA_MINUS + LAMBDA_PLUS == 3.0
    assert LAMBDA_MINUS * LAMBDA_PLUS == pytest.approx(1.0, abs=3e-16)
    # the identities hold exactly in the quadratic field: phi*(3-phi) = 1
    phi = QElem(0, 1)
    assert (phi * (QElem(3) - phi)) == QElem(1)
    assert (phi + (QElem(3) - phi)) == QElem(3)
    assert LAMBDA_MINUS == pytest.approx(2 - 2 * math.cos(math.pi / 5), abs=0)
    assert LAMBDA_PLUS == pytest.approx(2 - 2 * math.cos(3 * math.pi / 5), abs=0)


def test_laplacian_single_edge():
    L = laplacian(make_path(2).graph)
    assert L.tolist() == [[1, -1], [-1, 1]]


def test_laplacian_p3_spectrum():
    # 3x3 characteristic polynomial factors as x(x-1)(x-3)
    g = make_path(3).graph
    spec = eigen(laplacian(g))
    assert np.allclose(spec.eigenvalues, [0.0, 1.0, 3.0], atol=1e-12)
    assert rational_multiplicity_reference(g, Fraction(1)) == 1
    assert rational_multiplicity_reference(g, Fraction(3)) == 1


def test_pendant_pair_principal_submatrix():
    # mid u (degree 2) and its leaf w cut out the block [[2,-1],[-1,1]]
    tree = make_starlike_uniform(3, 2)
    L = laplacian(tree.graph)
    mid, leaf = 1, 2
    assert tree.graph.degree(mid) == 2 and tree.graph.degree(leaf) == 1
    block = L[np.ix_([mid, leaf], [mid, leaf])]
    assert block.tolist() == [[2, -1], [-1, 1]]


def test_eigen_p5_contains_plateau_pair():
    spec = spectrum_of(make_path(5).graph)
    assert multiplicity(spec, LAMBDA_MINUS) == 1
    assert multiplicity(spec, LAMBDA_PLUS) == 1


def test_eigen_star_spectrum():
    # K_{1,3}: exact multiplicities from Fraction elimination are 1, 2, 1
    g = make_starlike_uniform(3, 1).graph
    assert rational_multiplicity_reference(g, Fraction(0)) == 1
    assert rational_multiplicity_reference(g, Fraction(1)) == 2
    assert rational_multiplicity_reference(g, Fraction(4)) == 1
    spec = spectrum_of(g)
    assert np.allclose(spec.eigenvalues, [0.0, 1.0, 1.0, 4.0], atol=1e-12)


def test_eigen_single_vertex():
    import treeplateaux

    g = treeplateaux.Graph(adjacency=((),))
    spec = spectrum_of(g)
    assert spec.eigenvalues.tolist() == [0.0]


def test_eigen_vectors_orthonormal_and_accurate():
    g = make_random_tree(60, 3, 0.3).graph
    L = laplacian(g)
    spec = eigen(L, want_vectors=True)
    V = spec.eigenvectors
    gram = V.T @ V
    assert np.abs(gram - np.eye(g.n)).max() <= 1e-8
    # lambda_0 = 0 with the constant eigenvector
    ones = np.ones(g.n) / math.sqrt(g.n)
    assert np.abs(L.astype(float) @ ones).max() <= 1e-10
    assert abs(spec.eigenvalues[0]) <= 1e-10
    # trace identity
    assert abs(spec.eigenvalues.sum() - 2 * g.edge_count) <= 1e-8 * g.n
    assert spec.eigenvalues.min() >= -1e-10
    assert spec.eigenvalues.max() <= g.n


def test_multiplicity_window_rules():
    spec = spectrum_of(make_starlike_uniform(5, 2).graph)
    assert multiplicity(spec, LAMBDA_MINUS) == 4
    assert multiplicity(spec, LAMBDA_PLUS) == 4
    assert multiplicity(spec, 0.0) == 1
    with pytest.raises(ValueError):
        multiplicity(spec, 1.0, half_width=0.0)
    # window doubles as interval counting: everything in [0, n]
    wide = multiplicity(spec, spec.eigenvalues.mean(), half_width=100.0)
    assert wide == spec.n


def test_path_spectrum_values():
    five = path_spectrum(5)
    assert np.allclose(
        five, [0.0, LAMBDA_MINUS, 1.0 + LAMBDA_MINUS, LAMBDA_PLUS, 1.0 + LAMBDA_PLUS],
        atol=1e-12,
    )
    assert np.allclose(path_spectrum(2), [0.0, 2.0], atol=0)
    four = path_spectrum(4)
    assert np.allclose(four, [0.0, 2 - math.sqrt(2), 2.0, 2 + math.sqrt(2)], atol=1e-12)
    assert np.allclose(
        four, eigen(laplacian(make_path(4).graph)).eigenvalues, atol=1e-10
    )
    with pytest.raises(ValueError):
        path_spectrum(0)


@pytest.mark.parametrize("n", [2, 3, 10, 37, 120])
def test_eigen_matches_path_formula(n):
    computed = eigen(laplacian(make_path(n).graph)).eigenvalues
    assert np.abs(computed - path_spectrum(n)).max() <= 1e-8


def test_starlike_branch_eigenvalues_m2_is_plateau_pair():
    values = starlike_branch_eigenvalues(7, 2)
    assert values[0][0] == pytest.approx(LAMBDA_MINUS, abs=1e-12)
    assert values[1][0] == pytest.approx(LAMBDA_PLUS, abs=1e-12)
    assert [mult for _, mult in values] == [6, 6]
    assert 2 + 2 * math.cos(2 * math.pi / 5) == pytest.approx(LAMBDA_PLUS, abs=1e-12)
    assert 2 + 2 * math.cos(4 * math.pi / 5) == pytest.approx(LAMBDA_MINUS, abs=1e-12)


def test_starlike_branch_eigenvalues_edge_cases():
    assert starlike_branch_eigenvalues(3, 2) == [
        (pytest.approx(LAMBDA_MINUS), 2),
        (pytest.approx(LAMBDA_PLUS), 2),
    ]
    # k=2, m=1 gives the single value 1 (cross-check: P3 spectrum is {0,1,3})
    [(value, mult)] = starlike_branch_eigenvalues(2, 1)
    assert value == pytest.approx(1.0, abs=1e-12)
    assert mult == 1
    with pytest.raises(ValueError):
        starlike_branch_eigenvalues(1, 2)
    with pytest.raises(ValueError):
        starlike_branch_eigenvalues(3, 0)


def test_starlike_branch_values_appear_in_spectrum():
    for k, m in [(3, 3), (4, 2), (5, 4)]:
        spec = spectrum_of(make_starlike_uniform(k, m).graph)
        for value, mult in starlike_branch_eigenvalues(k, m):
            assert multiplicity(spec, value, half_width=1e-8) >= mult


def test_detect_plateaux_s42():
    spec = spectrum_of(make_starlike_uniform(4, 2).graph)
    plateaux = detect_plateaux(spec)
    assert [(round(p.value, 6), p.multiplicity) for p in plateaux] == [
        (0.381966, 3),
        (2.618034, 3),
    ]
    for p in plateaux:
        assert p.stop - p.start == p.multiplicity


def test_detect_plateaux_none_on_p6():
    assert detect_plateaux(spectrum_of(make_path(6).graph)) == []


def test_detect_plateaux_star():
    plateaux = detect_plateaux(spectrum_of(make_starlike_uniform(3, 1).graph))
    assert len(plateaux) == 1
    assert plateaux[0].value == pytest.approx(1.0, abs=1e-10)
    assert plateaux[0].multiplicity == 2


def test_size_cap(monkeypatch):
    g = make_path(30).graph
    with pytest.raises(SizeCapError):
        eigen(laplacian(g), cap=10)
    monkeypatch.setenv("TREEPLATEAUX_MAX_VERTICES", "10")
    with pytest.raises(SizeCapError):
        eigen(laplacian(g))
    monkeypatch.setenv("TREEPLATEAUX_MAX_VERTICES", "50")
    assert eigen(laplacian(g)).n == 30
