"""Estimation formulas, ordering heuristics, and their invariants."""

import numpy as np
import pytest

from kronspec.checks import complete_graph, cycle_graph
from kronspec.estimators import (
    Ordering,
    OrderingKind,
    apply_ordering,
    estimated_eigenvector,
    normalized_estimate,
    sayama_spectrum,
)
from kronspec.generators import GeneratorSpec, generate_connected
from kronspec.graphs import kronecker_graph, laplacian, normalized_laplacian
from kronspec.spectral import sym_eig, sym_eigenvalues


def brute_force_product_spectrum(g, h):
    """Eigenvalues of the product Laplacian built by enumerating the definition."""
    n = g.n * h.n
    adjacency = np.zeros((n, n))
    for i in range(g.n):
        for k in range(h.n):
            for j in range(g.n):
                for l in range(h.n):
                    adjacency[i * h.n + k, j * h.n + l] = g.adjacency[i, j] * h.adjacency[k, l]
    lap = np.diag(adjacency.sum(axis=1)) - adjacency
    return np.linalg.eigvalsh(lap)


def test_apply_ordering_sorts():
    values = np.array([3.0, 1.0, 2.0])
    asc = apply_ordering(values, Ordering())
    assert values[asc].tolist() == [1.0, 2.0, 3.0]
    desc = apply_ordering(values, Ordering(kind=OrderingKind.ANTI_CORRELATED))
    assert values[desc].tolist() == [3.0, 2.0, 1.0]


def test_apply_ordering_randomized_zero_swaps_is_base():
    values = np.array([5.0, 1.0, 4.0, 2.0])
    base = apply_ordering(values, Ordering())
    randomized = apply_ordering(
        values, Ordering(kind=OrderingKind.CORRELATED_RANDOMIZED, swap_count=0)
    )
    assert np.array_equal(base, randomized)


def test_apply_ordering_uncorrelated_is_seeded():
    values = np.arange(10.0)
    a = apply_ordering(values, Ordering(kind=OrderingKind.UNCORRELATED, randomization_seed=7))
    b = apply_ordering(values, Ordering(kind=OrderingKind.UNCORRELATED, randomization_seed=7))
    assert np.array_equal(a, b)
    c = apply_ordering(values, Ordering(kind=OrderingKind.UNCORRELATED, randomization_seed=8))
    assert not np.array_equal(a, c)


def test_ordering_validation():
    with pytest.raises(ValueError):
        Ordering(kind=OrderingKind.CORRELATED, swap_count=3)
    with pytest.raises(ValueError):
        Ordering(kind=OrderingKind.CORRELATED_RANDOMIZED, swap_count=-1)
    # default swap count for randomized kinds resolves to n // 4 at apply time
    values = np.arange(8.0)
    perm = apply_ordering(values, Ordering(kind=OrderingKind.CORRELATED_RANDOMIZED))
    assert sorted(perm.tolist()) == list(range(8))


def test_k2_factors_match_exact_product():
    # both estimators reproduce the spectrum of K2 (x) K2: {0, 0, 2, 2}
    mu = np.array([0.0, 2.0])
    d = np.array([1, 1])
    sayama = np.sort(sayama_spectrum(mu, d, mu, d).values)
    normalized = np.sort(normalized_estimate(mu, d, mu, d).values)
    from kronspec.graphs import build_graph

    k2 = build_graph(2, [(0, 1)])
    exact = brute_force_product_spectrum(k2, k2)
    assert np.allclose(sayama, exact, atol=1e-12)
    assert np.allclose(normalized, exact, atol=1e-12)


def test_regular_factors_are_exact():
    # for regular factors the eigenvector bases diagonalize D too, so both
    # estimates equal the exact spectrum as multisets
    c4, k3 = cycle_graph(4), complete_graph(3)
    exact = brute_force_product_spectrum(c4, k3)
    mu1, d1 = sym_eigenvalues(laplacian(c4)), np.sort(c4.degrees)
    mu2, d2 = sym_eigenvalues(laplacian(k3)), np.sort(k3.degrees)
    lam1 = sym_eigenvalues(normalized_laplacian(c4))
    lam2 = sym_eigenvalues(normalized_laplacian(k3))
    assert np.abs(np.sort(sayama_spectrum(mu1, d1, mu2, d2).values) - exact).max() <= 1e-9
    assert np.abs(np.sort(normalized_estimate(lam1, d1, lam2, d2).values) - exact).max() <= 1e-9


def test_estimates_contain_exact_zero():
    g = generate_connected(GeneratorSpec("ER", 12, 0.4, seed=3))
    h = generate_connected(GeneratorSpec("ER", 9, 0.4, seed=4))
    mu1, d1 = sym_eigenvalues(laplacian(g)), np.sort(g.degrees)
    mu2, d2 = sym_eigenvalues(laplacian(h)), np.sort(h.degrees)
    lam1 = sym_eigenvalues(normalized_laplacian(g))
    lam2 = sym_eigenvalues(normalized_laplacian(h))
    for est in (sayama_spectrum(mu1, d1, mu2, d2), normalized_estimate(lam1, d1, lam2, d2)):
        assert len(est) == g.n * h.n
        assert 0.0 in est.values
        # the zero sits at the pair of the two zero eigenvalues
        where = np.nonzero(est.values == 0.0)[0]
        assert any(tuple(est.pairs[t]) == (0, 0) for t in where)


def test_nonnegativity_under_correlated_ordering():
    for seed in range(10):
        g = generate_connected(GeneratorSpec("ER", 15, 0.35, seed=seed))
        h = generate_connected(GeneratorSpec("ER", 11, 0.35, seed=seed + 50))
        mu1, d1 = sym_eigenvalues(laplacian(g)), np.sort(g.degrees)
        mu2, d2 = sym_eigenvalues(laplacian(h)), np.sort(h.degrees)
        lam1 = sym_eigenvalues(normalized_laplacian(g))
        lam2 = sym_eigenvalues(normalized_laplacian(h))
        assert sayama_spectrum(mu1, d1, mu2, d2).values.min() >= -1e-12
        assert normalized_estimate(lam1, d1, lam2, d2).values.min() >= -1e-12


def test_normalized_nonnegative_under_any_ordering():
    g = generate_connected(GeneratorSpec("ER", 14, 0.4, seed=21))
    h = generate_connected(GeneratorSpec("ER", 10, 0.4, seed=22))
    lam1, d1 = sym_eigenvalues(normalized_laplacian(g)), np.sort(g.degrees)
    lam2, d2 = sym_eigenvalues(normalized_laplacian(h)), np.sort(h.degrees)
    for kind in OrderingKind:
        est = normalized_estimate(lam1, d1, lam2, d2, Ordering(kind=kind, randomization_seed=1))
        assert est.values.min() >= -1e-12


def test_orderings_differ_on_irregular_factors():
    g = generate_connected(GeneratorSpec("ER", 16, 0.3, seed=33))
    h = generate_connected(GeneratorSpec("ER", 12, 0.3, seed=34))
    assert len(set(g.degrees.tolist())) > 1  # irregular by construction
    mu1, d1 = sym_eigenvalues(laplacian(g)), np.sort(g.degrees)
    mu2, d2 = sym_eigenvalues(laplacian(h)), np.sort(h.degrees)
    correlated = np.sort(sayama_spectrum(mu1, d1, mu2, d2, Ordering()).values)
    anti = np.sort(
        sayama_spectrum(mu1, d1, mu2, d2, Ordering(kind=OrderingKind.ANTI_CORRELATED)).values
    )
    assert not np.allclose(correlated, anti)


def test_length_mismatch_raises():
    with pytest.raises(ValueError):
        sayama_spectrum([0.0, 1.0], [1, 1, 1], [0.0], [1])
    with pytest.raises(ValueError):
        normalized_estimate([0.0, 1.0], [2, 1], [0.0, 1.0], [1, 1])  # degrees not ascending


def test_estimated_eigenvector():
    basis1 = np.eye(3)
    basis2 = np.eye(2)
    vec = estimated_eigenvector(1, 0, basis1, basis2)
    expected = np.zeros(6)
    expected[2] = 1.0
    assert np.array_equal(vec, expected)


def test_first_pair_is_ones_direction_for_laplacian_basis():
    g = generate_connected(GeneratorSpec("ER", 10, 0.5, seed=8))
    h = generate_connected(GeneratorSpec("ER", 8, 0.5, seed=9))
    w1 = sym_eig(laplacian(g)).eigenvectors
    w2 = sym_eig(laplacian(h)).eigenvectors
    vec = estimated_eigenvector(0, 0, w1, w2)
    ones = np.ones(g.n * h.n) / np.sqrt(g.n * h.n)
    assert np.linalg.norm(vec - ones) <= 1e-9
    # exact eigenvector for eigenvalue 0 of the product Laplacian
    lap_product = laplacian(kronecker_graph(g, h))
    assert np.linalg.norm(lap_product @ vec) <= 1e-9


def test_first_normalized_pair_is_not_product_eigenvector():
    # for irregular factors, v1 kron v1 is not an eigenvector of the product
    # Laplacian (unlike the Laplacian-basis pair)
    g = generate_connected(GeneratorSpec("ER", 10, 0.4, seed=18))
    h = generate_connected(GeneratorSpec("ER", 8, 0.4, seed=19))
    assert len(set(g.degrees.tolist())) > 1
    v1 = sym_eig(normalized_laplacian(g)).eigenvectors
    v2 = sym_eig(normalized_laplacian(h)).eigenvectors
    vec = estimated_eigenvector(0, 0, v1, v2)
    lap_product = laplacian(kronecker_graph(g, h))
    image = lap_product @ vec
    # residual of the best eigenvalue fit stays far from zero
    best = image @ vec
    assert np.linalg.norm(image - best * vec) > 1e-3
