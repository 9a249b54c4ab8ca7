"""Laplacian spectra of Kronecker products of graphs, estimated from factor spectra."""

from .graphs import (
    Graph,
    build_graph,
    edge_density,
    from_adjacency,
    is_bipartite,
    is_connected,
    kronecker_graph,
    kronecker_matrix,
    laplacian,
    normalized_laplacian,
    normalized_laplacian_of,
    read_edge_list,
    write_edge_list,
)
from .generators import (
    GenerationError,
    GeneratorSpec,
    barabasi_albert,
    density_to_params,
    derive_seed,
    erdos_renyi,
    generate_connected,
    generate_connected_pair,
    watts_strogatz,
)
from .spectral import SpectralDecomposition, cosine, kron_vec, sym_eig, sym_eigenvalues
from .estimators import (
    EstimatedSpectrum,
    Estimator,
    Ordering,
    OrderingKind,
    apply_ordering,
    estimated_eigenvector,
    normalized_estimate,
    sayama_spectrum,
)
from .metrics import (
    DensityCurve,
    ErrorProfile,
    aggregate_profile,
    chi_squared_normality,
    correlation_profile,
    fisher_z,
    kde,
    normality_pass_count,
    percentage_errors,
    silverman_bandwidth,
)
from .theory import (
    DegreeIndices,
    asymptotic_inequality_holds,
    expected_kron_normalized_spectrum,
    expected_r1j,
    mean_rms_ratio,
    rprime_lower_bound,
    sayama_bound_holds,
)
from .experiments import (
    ExperimentBundle,
    ExperimentConfig,
    RunRecord,
    reproduce_figure,
    run_experiment,
    run_single,
    theory_suite,
)

__version__ = "0.1.0"
