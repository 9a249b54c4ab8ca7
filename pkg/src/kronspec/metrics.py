"""Accuracy metrics for estimated spectra and eigenvectors.

Four families of measurements:

* correlation profiles: the cosine between x and L x for every candidate
  eigenvector x = u_i kron v_j, which is 1 exactly when x is an eigenvector;
* percentage-error vectors between sorted estimated and sorted exact
  spectra, with the matched zero eigenvalue dropped from both;
* aggregation of per-run error vectors into median and 5/95-percentile
  bands per rank;
* Gaussian kernel density curves (Silverman bandwidth) and a chi-squared
  normality counter for correlation-coefficient samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import ndtr
from scipy.stats import chi2

from .estimators import EstimatedSpectrum

# percentile convention for all error bands: linear interpolation
PERCENTILE_METHOD = "linear"


@dataclass(frozen=True)
class ErrorProfile:
    """Per-rank percentage-error statistics across independent runs.

    ``samples[r, k]`` is the error of rank k+2 of the sorted spectrum (rank 1,
    the matched zeros, is dropped) in run r. ``median``, ``p5`` and ``p95``
    are per-rank summaries over runs.
    """

    ranks: np.ndarray        # 1..n1*n2-1
    samples: np.ndarray      # (runs, ranks)
    median: np.ndarray
    p5: np.ndarray
    p95: np.ndarray
    meta: dict = field(default_factory=dict)

    @property
    def run_count(self) -> int:
        return self.samples.shape[0]


@dataclass(frozen=True)
class DensityCurve:
    """Smoothed probability density on an even grid."""

    grid: np.ndarray
    density: np.ndarray
    bandwidth: float
    meta: dict = field(default_factory=dict)


def correlation_profile(
    lap: np.ndarray,
    basis1: np.ndarray,
    basis2: np.ndarray,
    skip_first: bool = True,
    pairs: list[tuple[int, int]] | None = None,
    block: int = 512,
) -> dict[tuple[int, int], float]:
    """Cosine between u_i kron v_j and L (u_i kron v_j) for all column pairs.

    Indices are 0-based; with ``skip_first`` the (0, 0) pair is omitted
    (its image under a product Laplacian is the zero vector), leaving
    n1*n2 - 1 values. An explicit ``pairs`` list restricts the profile to
    those pairs instead. Work proceeds in column blocks so memory stays at
    O(dim * block) beyond the matrix itself.
    """
    lap = np.asarray(lap, dtype=np.float64)
    dim = lap.shape[0]
    n1, n2 = basis1.shape[1], basis2.shape[1]
    if basis1.shape[0] * basis2.shape[0] != dim:
        raise ValueError(
            f"basis dimensions {basis1.shape[0]}x{basis2.shape[0]} do not match matrix dim {dim}"
        )
    if pairs is None:
        pairs = [(i, j) for i in range(n1) for j in range(n2)]
        if skip_first:
            pairs = pairs[1:]
    out: dict[tuple[int, int], float] = {}
    for start in range(0, len(pairs), block):
        chunk = pairs[start:start + block]
        x = np.empty((dim, len(chunk)))
        for c, (i, j) in enumerate(chunk):
            x[:, c] = np.kron(basis1[:, i], basis2[:, j])
        lx = lap @ x
        num = np.einsum("dc,dc->c", x, lx)
        den = np.linalg.norm(lx, axis=0) * np.linalg.norm(x, axis=0)
        for c, (i, j) in enumerate(chunk):
            if den[c] == 0.0:
                raise ValueError(f"pair ({i}, {j}) maps to the zero vector; cosine undefined")
            out[(i, j)] = float(num[c] / den[c])
    return out


def percentage_errors(
    estimated: EstimatedSpectrum | np.ndarray,
    actual: np.ndarray,
    zero_tol: float | None = None,
) -> np.ndarray:
    """Per-rank percentage error between sorted estimated and exact spectra.

    Both spectra are sorted ascending and rank 1 (the zero eigenvalue,
    matched exactly by construction) is dropped from both, so the result has
    n1*n2 - 1 entries: 100 * (est_k - act_k) / act_k. The exact spectrum
    must contain exactly one eigenvalue below ``zero_tol`` (default:
    1e-8 times the largest eigenvalue); more means the product was
    disconnected and rank pairing is meaningless.
    """
    values = estimated.values if isinstance(estimated, EstimatedSpectrum) else np.asarray(estimated)
    actual = np.asarray(actual, dtype=np.float64)
    if len(values) != len(actual):
        raise ValueError(f"length mismatch: {len(values)} estimated vs {len(actual)} actual")
    if np.any(np.diff(actual) < 0):
        raise ValueError("actual spectrum must be sorted ascending")
    if zero_tol is None:
        zero_tol = 1e-8 * max(float(actual[-1]), 1e-300)
    zeros = int(np.sum(actual <= zero_tol))
    if zeros != 1:
        raise ValueError(
            f"expected exactly one zero eigenvalue, found {zeros} below {zero_tol:g} "
            "(disconnected product?)"
        )
    est = np.sort(values)
    return 100.0 * (est[1:] - actual[1:]) / actual[1:]


def aggregate_profile(error_vectors, meta: dict | None = None) -> ErrorProfile:
    """Stack per-run error vectors and summarize per rank.

    Percentiles use linear interpolation; the summary always satisfies
    p5 <= median <= p95 rankwise.
    """
    samples = np.asarray(list(error_vectors), dtype=np.float64)
    if samples.size == 0:
        raise ValueError("no error vectors to aggregate")
    if samples.ndim == 1:
        samples = samples[None, :]
    p5, median, p95 = np.percentile(samples, [5, 50, 95], axis=0, method=PERCENTILE_METHOD)
    return ErrorProfile(
        ranks=np.arange(1, samples.shape[1] + 1),
        samples=samples,
        median=median,
        p5=p5,
        p95=p95,
        meta=dict(meta or {}),
    )


def silverman_bandwidth(samples: np.ndarray) -> float:
    """1.06 * sigma * m^(-1/5) with the sample standard deviation."""
    samples = np.asarray(samples, dtype=np.float64)
    sigma = float(np.std(samples, ddof=1))
    return 1.06 * sigma * len(samples) ** (-0.2)


def kde(samples: np.ndarray, grid_size: int = 512, meta: dict | None = None) -> DensityCurve:
    """Gaussian kernel density estimate on an even grid.

    The grid spans [min - 3h, max + 3h] with h the Silverman bandwidth, so
    the curve integrates to 1 up to kernel tail mass. Needs at least two
    distinct samples.
    """
    samples = np.asarray(samples, dtype=np.float64)
    if len(samples) < 2:
        raise ValueError("kernel density needs at least 2 samples")
    h = silverman_bandwidth(samples)
    if h <= 0.0:
        raise ValueError("zero-variance samples; kernel density degenerate")
    grid = np.linspace(samples.min() - 3 * h, samples.max() + 3 * h, grid_size)
    z = (grid[:, None] - samples[None, :]) / h
    density = np.exp(-0.5 * z * z).sum(axis=1) / (len(samples) * h * math.sqrt(2 * math.pi))
    return DensityCurve(grid=grid, density=density, bandwidth=h, meta=dict(meta or {}))


def fisher_z(samples: np.ndarray) -> np.ndarray:
    """Variance-stabilizing arctanh transform for correlation coefficients.

    Correlation coefficients live in [-1, 1] with a hard ceiling that skews
    their sampling distribution; in z = arctanh(r) coordinates they are
    close to normal, which is the standard coordinate system for normality
    statements about them. Inputs are clipped one ulp inside (-1, 1).
    """
    samples = np.asarray(samples, dtype=np.float64)
    return np.arctanh(np.clip(samples, -1 + 1e-15, 1 - 1e-15))


def chi_squared_normality(samples: np.ndarray, alpha: float = 0.05, dof_reduction: int = 1) -> bool:
    """Pearson chi-squared goodness-of-fit test against a fitted normal.

    Convention: Sturges binning (ceil(log2 m) + 1 bins over the sample
    range, outer bins extended to infinity), adjacent bins merged until
    every expected count reaches 5, and the normal fitted by sample mean
    and (ddof=1) variance. Degrees of freedom are bins - dof_reduction
    with a floor of 1: the default 1 is the conservative choice when the
    parameters are estimated from the unbinned sample (the statistic is
    then stochastically below a chi-squared with bins - 1 dof); pass 3 for
    the classical binned-fit count. Returns True when the statistic stays
    below the critical value at ``alpha``.
    """
    samples = np.asarray(samples, dtype=np.float64)
    m = len(samples)
    if m < 30:
        raise ValueError(f"need at least 30 samples for the chi-squared test, got {m}")
    mean = float(np.mean(samples))
    sigma = float(np.std(samples, ddof=1))
    if sigma == 0.0:
        return False
    bins = int(np.ceil(np.log2(m))) + 1
    edges = np.linspace(samples.min(), samples.max(), bins + 1)
    observed = np.histogram(samples, edges)[0].astype(np.float64)
    cdf = ndtr((edges - mean) / sigma)
    cdf[0], cdf[-1] = 0.0, 1.0
    expected = m * np.diff(cdf)

    # merge left-to-right until every group expects at least 5
    obs_groups, exp_groups = [], []
    acc_o, acc_e = 0.0, 0.0
    for o, e in zip(observed, expected):
        acc_o += o
        acc_e += e
        if acc_e >= 5.0:
            obs_groups.append(acc_o)
            exp_groups.append(acc_e)
            acc_o, acc_e = 0.0, 0.0
    if acc_e > 0.0:
        if exp_groups:
            obs_groups[-1] += acc_o
            exp_groups[-1] += acc_e
        else:
            obs_groups, exp_groups = [acc_o], [acc_e]

    obs_arr = np.asarray(obs_groups)
    exp_arr = np.asarray(exp_groups)
    stat = float(np.sum((obs_arr - exp_arr) ** 2 / exp_arr))
    dof = max(len(exp_arr) - dof_reduction, 1)
    return stat <= float(chi2.isf(alpha, dof))


def normality_pass_count(
    samples_by_pair: dict[tuple[int, int], np.ndarray],
    alpha: float = 0.05,
    dof_reduction: int = 1,
) -> tuple[int, int]:
    """Count (i, j) pairs whose samples pass the chi-squared normality test."""
    passed = 0
    for samples in samples_by_pair.values():
        if chi_squared_normality(samples, alpha, dof_reduction):
            passed += 1
    return passed, len(samples_by_pair)
