"""Smoothed densities of the vector correlation coefficients.

For each candidate eigenvector x = u_i kron v_j the coefficient
cosine(x, L x) measures how close x is to a true eigenvector (1 = exact).
This script pools the coefficients from 5 independent (30, 50)
Erdos-Renyi draws at 30% density, smooths them with a Gaussian kernel
(Silverman bandwidth), and prints a terminal sketch of both curves: the
Laplacian basis (w) concentrates higher than the normalized basis (v).
"""

import numpy as np

from kronspec import ExperimentConfig, run_experiment

bundle = run_experiment(
    ExperimentConfig(
        model="ER",
        orders=(30, 50),
        density=0.30,
        runs=5,
        master_seed=31,
        compute_correlations=True,
        output_dir="demos_out/correlation_density",
    )
)

for basis in ("laplacian", "normalized"):
    samples = bundle.correlation_samples[basis].ravel()
    curve = bundle.density_curves[basis]
    peak = curve.grid[np.argmax(curve.density)]
    print(f"\n{basis} basis: {samples.size} coefficients, "
          f"mean {samples.mean():.4f}, peak near {peak:.4f}, bandwidth {curve.bandwidth:.5f}")
    # coarse terminal sketch over the last stretch toward 1
    lo = np.searchsorted(curve.grid, 0.85)
    sketch = curve.density[lo:]
    step = max(1, len(sketch) // 24)
    top = sketch.max()
    for k in range(0, len(sketch), step):
        x = curve.grid[lo + k]
        bar = "#" * int(40 * sketch[k] / top)
        print(f"  {x:.3f} {bar}")

print("\nCSV curves written under demos_out/correlation_density/")
