"""Finite-field graph constructions and certified Lovász theta bounds,
built for desk-scale verification."""

from .errors import (
    ComplexityRefused,
    ConvergenceFailure,
    DimensionMismatch,
    DivisionByZero,
    GapNotReached,
    HandleOrthogonalToVector,
    IndexOutOfRange,
    LoopRejected,
    NoEdges,
    NotACliqueCover,
    NotPrime,
    OrderUnavailable,
    Overflow,
    PreconditionViolated,
    RepInvalid,
    ThetalabError,
    UnsupportedPattern,
)
from .ffield import (
    FieldElement,
    FieldSpec,
    element_of_order,
    field_create,
    field_from_order,
    is_prime,
    prime_power_split,
    subgroup,
)
from .graph import (
    Graph,
    LayerColoringReport,
    bfs_layers,
    chromatic_number_exact,
    complement,
    complete_graph,
    contains_clique,
    contains_complete_bipartite,
    contains_cycle,
    contains_pattern,
    cycle_graph,
    empty_graph,
    from_edges,
    graph_from_json,
    graph_from_text,
    graph_to_json,
    graph_to_text,
    induced_subgraph,
    layer_chromatic_check,
    max_clique_size,
    parse_pattern,
)
from .linalg import (
    Spectrum,
    SymMatrix,
    adjacency_dense,
    adjacency_sym,
    eigen_sym,
    numeric_rank,
    psd_project,
    sym_from_dense,
    trace_power,
)
from .constructions import (
    FurediGraph,
    SquareIdentityReport,
    clique_union,
    clique_union_parts,
    furedi_graph,
    furedi_square_identity,
    polarity_graph,
    polarity_graph_with_loops,
)
from .ortho import (
    MsrChainReport,
    OrthoRep,
    RepValidation,
    SchnirelmannReport,
    TracePowerReport,
    basis_rep_from_clique_cover,
    gram,
    greedy_clique_cover,
    msr_lower_chain_check,
    msr_upper_certificate,
    random_rep,
    rep_from_json,
    rep_sum_length,
    rep_sum_length_aligned,
    rep_to_json,
    schnirelmann_check,
    trace_power_certificate,
    umbrella_rep,
    validate_rep,
)
from .theta import (
    BoundFormulaReport,
    L_bounds,
    ThetaResult,
    bound_formula_check,
    solver_cap,
    theta_lower_from_rep,
    theta_sdp,
    theta_spectral_lower_of_complement,
    theta_upper_from_rep,
    transitive_identity_check,
)
from .experiments import (
    EXPERIMENT_NAMES,
    ExperimentCheck,
    ExperimentReport,
    run_experiment,
    run_experiments,
)

__version__ = "0.1.0"
