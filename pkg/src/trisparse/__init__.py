"""Hard-core model occupancy bounds and fractional colouring on locally
triangle-sparse graphs.

The package computes, exactly where feasible and by Monte Carlo beyond that,
the occupancy statistics of the hard-core model on graphs whose vertex
neighbourhoods span few edges, together with the Lambert-W machinery that
turns local sparsity into occupancy-fraction floors and fractional
chromatic number ceilings, exact LP values for the latter, and the extremal
constructions that show how tight those bounds are.
"""

from .bounds import (
    AlphaBeta,
    BasicBounds,
    BoundReport,
    ChifUpper,
    TheoremNumbers,
    ZSolution,
    admissibility_diagnostics,
    alpha_beta,
    asymptotic_occupancy,
    basic_bounds,
    bound_report,
    certificate_rate,
    chif_upper,
    lambert_w,
    min_certificate_rate,
    occupancy_lower_bound,
    solve_z,
    theorem_numbers,
)
from .errors import (
    CapExceededError,
    CertificateError,
    DomainError,
    GenerationBudgetError,
    GraphFormatError,
)
from .fractional import (
    Certificate,
    ChiFractional,
    FractionalColoring,
    certified_upper_bound,
    chif_exact,
    maximal_independent_sets,
    verify_certificate,
)
from .generators import (
    bad_vertex_deletion,
    clique_blowup,
    complete_graph,
    cycle_graph,
    erdos_renyi,
    kneser_graph,
    named_graph,
    path_graph,
    petersen_graph,
    random_regular,
    star_graph,
    triangle_free_regular,
)
from .graph import Graph, SparsityAudit, audit, induced_subgraph, load_graph
from .hardcore import (
    GenHCMReport,
    HardCoreExact,
    LocalBoundReport,
    exact_marginals,
    independence_polynomial,
    occupancy_fraction,
    partition_function,
    uncovered_expectation,
    verify_genhcm,
    verify_hcmbound_local,
)
from .pipeline import ExperimentSpec, Report, compare_occupancy_sweep, run_experiment
from .sampler import ChainConfig, MarginalEstimate, SampleEstimate, estimate_marginal, glauber_run

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # graph
    "Graph", "SparsityAudit", "audit", "induced_subgraph", "load_graph",
    # hard-core exact
    "HardCoreExact", "GenHCMReport", "LocalBoundReport",
    "independence_polynomial", "partition_function", "exact_marginals",
    "occupancy_fraction", "uncovered_expectation", "verify_genhcm",
    "verify_hcmbound_local",
    # sampler
    "ChainConfig", "SampleEstimate", "MarginalEstimate", "glauber_run",
    "estimate_marginal",
    # bounds
    "lambert_w", "ZSolution", "solve_z", "occupancy_lower_bound",
    "asymptotic_occupancy", "admissibility_diagnostics", "AlphaBeta",
    "alpha_beta", "certificate_rate", "min_certificate_rate", "ChifUpper",
    "chif_upper", "TheoremNumbers", "theorem_numbers", "BasicBounds",
    "basic_bounds", "BoundReport", "bound_report",
    # fractional
    "FractionalColoring", "ChiFractional", "Certificate",
    "maximal_independent_sets", "chif_exact", "verify_certificate",
    "certified_upper_bound",
    # generators
    "random_regular", "triangle_free_regular", "clique_blowup",
    "bad_vertex_deletion", "named_graph", "cycle_graph", "path_graph",
    "complete_graph", "star_graph", "petersen_graph", "kneser_graph",
    "erdos_renyi",
    # pipeline
    "ExperimentSpec", "Report", "run_experiment", "compare_occupancy_sweep",
    # errors
    "GraphFormatError", "DomainError", "CapExceededError",
    "GenerationBudgetError", "CertificateError",
]
