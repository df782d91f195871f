"""Reconstruction of consistent pairwise-comparison matrices from generator sets."""

from .core import (
    DomainError,
    PCMatrix,
    consistency_residual,
    extract_weights,
    from_weights,
    is_consistent,
    is_reciprocal,
    read_matrix_csv,
    write_matrix_csv,
)
from .enumeration import (
    SubsetClassification,
    TreeEdgeSet,
    classify_subsets,
    enumerate_min_handicap_sets,
    enumerate_minimal_generator_sets,
    prufer_decode,
    prufer_encode,
)
from .errorlab import ErrorReport, PerturbationSpec, perturb_pgs, propagate, worst_corner_error
from .genset import (
    ComparisonGraph,
    GeneratorEntry,
    GeneratorSet,
    HandicapReport,
    build_graph,
    derivable_pairs,
    frequency,
    generates,
    is_tree,
    read_generator_file,
    spanning_tree,
    total_handicap,
)
from .reconstruct import (
    NotGenerating,
    PrincipalGenerators,
    ReconstructionResult,
    reconstruct,
    reconstruct_from_pgs,
    solve_log_system,
    tree_path_reconstruct,
)

__version__ = "0.1.0"
