"""Asymptotic densities of integer k-tuples under pairwise coprimality constraints."""

from .density import (
    DensityReport,
    IsoClassTable,
    build_iso_table,
    density_A,
    density_at_least_r,
    density_C3_closed,
    density_C4_closed,
    density_exact_r,
    density_pairwise_coprime,
    density_pairwise_noncoprime,
    density_weights,
    density_zeta_inverse,
)
from .empirical import (
    CountResult,
    convergence_diagnostic,
    count_beta_exact,
    count_beta_via_inclusion_exclusion,
    count_delta_exact,
    monte_carlo,
)
from .euler import EulerProductValue, evaluate, sieve_primes, zeta_inverse
from .graph import (
    CoprimalityGraph,
    GraphError,
    builtin_graph,
    canonical_key,
    complete_graph,
    cycle_graph,
    degree,
    empty_graph,
    enumerate_edge_subsets,
    independent_set_counts,
    is_independent,
    max_degree,
    min_vertex_cover,
    neighborhood,
    non_isolated,
    parse_graph,
    path_graph,
)
from .local_factor import (
    MultiLocalFactor,
    UniLocalFactor,
    collapse,
    factor_by_edge_subsets,
    factor_by_independent_sets,
    factor_by_vertex_cover,
    mobius_delta_oracle,
    pairwise_coprime_factor,
)

__version__ = "0.1.0"
