"""Estimate the product Laplacian spectrum of one random factor pair.

Draws two connected Erdos-Renyi graphs (30 and 50 vertices, 30% density),
builds the 1500-vertex Kronecker product, and compares its exact Laplacian
spectrum to both estimates. Also checks the closed form for the first-row
correlation coefficients: every r(1, j) equals the mean of the first
factor's degrees over their root mean square.
"""

import numpy as np

from kronspec import (
    GeneratorSpec,
    correlation_profile,
    generate_connected_pair,
    kronecker_graph,
    laplacian,
    mean_rms_ratio,
    normalized_estimate,
    normalized_laplacian,
    percentage_errors,
    sayama_spectrum,
    sym_eig,
    sym_eigenvalues,
)
from kronspec.estimators import Ordering, OrderingKind

SEED = 7

g1, g2 = generate_connected_pair(
    GeneratorSpec("ER", 30, 0.30, seed=SEED),
    GeneratorSpec("ER", 50, 0.30, seed=SEED + 1),
)
print(f"factors: n={g1.n} (m={g1.edge_count}), n={g2.n} (m={g2.edge_count})")

product = kronecker_graph(g1, g2)
lap_product = laplacian(product)
exact = sym_eigenvalues(lap_product)
print(f"product: n={product.n}, m={product.edge_count}, lambda_max={exact[-1]:.2f}")

d1, d2 = np.sort(g1.degrees), np.sort(g2.degrees)
mu1, mu2 = sym_eigenvalues(laplacian(g1)), sym_eigenvalues(laplacian(g2))
lam1, lam2 = sym_eigenvalues(normalized_laplacian(g1)), sym_eigenvalues(normalized_laplacian(g2))

w_est = sayama_spectrum(mu1, d1, mu2, d2)
v_est = normalized_estimate(
    lam1, d1, lam2, d2, Ordering(kind=OrderingKind.UNCORRELATED, randomization_seed=SEED)
)

for name, est in (("w-basis (correlated)", w_est), ("v-basis (uncorrelated)", v_est)):
    errors = percentage_errors(est, exact)
    q = np.percentile(np.abs(errors), [50, 90, 99])
    print(f"{name:24s} |error| median {q[0]:6.2f}%   p90 {q[1]:6.2f}%   p99 {q[2]:6.2f}%")

# first-row correlation coefficients vs the degree closed form
w1 = sym_eig(laplacian(g1)).eigenvectors
w2 = sym_eig(laplacian(g2)).eigenvectors
row = [(0, j) for j in range(1, 6)]
profile = correlation_profile(lap_product, w1, w2, pairs=row)
print()
print("r(1, j) observed:", " ".join(f"{profile[p]:.8f}" for p in row))
print("mean/RMS formula:", f"{mean_rms_ratio(g1.degrees):.8f}")
