"""Automorphism-assisted QAOA for unweighted MaxCut on trees and stars."""

from .errors import ContractError, ParseError, ResourceError
from .graph import (
    Graph,
    balanced_tree,
    full_rary_tree,
    make_graph,
    parse_edge_list,
    path_graph,
    serialize_edge_list,
    star_graph,
)
from .automorphism import (
    EdgeClassPartition,
    GeneratorSet,
    Permutation,
    brute_force_automorphisms,
    edge_equivalence_classes,
    find_automorphism_generators,
    refine_partition,
    vertex_orbits,
)
from .hamiltonian import (
    IsingHamiltonian,
    QuboMatrix,
    build_full_qubo,
    build_reduced_qubo,
    cut_value,
    energy,
    full_hamiltonian,
    qubo_to_ising,
    reduced_hamiltonian,
    reduction_percentage,
    term_count,
)
from .rcc import (
    RccReport,
    ball_around,
    combined_coverage,
    minimal_depth,
    minimal_depth_over_representatives,
    rcc_ball,
)
from .simulator import (
    AnsatzParams,
    StateVector,
    apply_mixer,
    apply_phase_separator,
    build_qaoa_state,
    expectation,
    expectation_via_rcc,
    init_plus,
    pauli_z_expectation,
    permute_statevector,
    sample_bitstrings,
    verify_orbit_symmetry,
)
from .optimizer import OptResult, OptimizerConfig, nelder_mead, optimize_qaoa
from .harness import (
    InstanceRecord,
    RunConfig,
    approximation_ratio,
    bench_suite,
    classical_max_cut,
    emit_report,
    run_instance,
)

__version__ = "0.1.0"
