"""Generalized derangement graphs: counting, structure, constructions and search."""

from .permutations import (
    Permutation,
    compose,
    cycle_type,
    has_subpartition,
    induced_image,
    inverse,
    is_k_derangement,
    is_k_derangement_direct,
    parse_permutation,
)
from .enumeration import (
    class_size,
    count_k_derangements,
    deranged_cycle_types,
    enumerate_k_derangements,
    partitions,
    predict_eulerian,
)
from .cayley import (
    CayleyGraph,
    connected_components,
    export_graph,
    factor_adjacent_transposition,
    is_eulerian,
    position_agreement_adjacent,
    rank,
    unrank,
)
from .finitefield import FieldSpec, find_irreducible
from .constructions import (
    build_clique,
    build_independent_set,
    coset_coloring,
    frankl_deza_check,
    theoretical_values,
    verify_clique,
    verify_coloring,
    verify_independent_set,
)
from .search import SearchBudget, grow_clique_heuristic, max_clique, max_independent_set

__version__ = "0.1.0"

__all__ = [
    "Permutation",
    "compose",
    "cycle_type",
    "has_subpartition",
    "induced_image",
    "inverse",
    "is_k_derangement",
    "is_k_derangement_direct",
    "parse_permutation",
    "class_size",
    "count_k_derangements",
    "deranged_cycle_types",
    "enumerate_k_derangements",
    "partitions",
    "predict_eulerian",
    "CayleyGraph",
    "connected_components",
    "export_graph",
    "factor_adjacent_transposition",
    "is_eulerian",
    "position_agreement_adjacent",
    "rank",
    "unrank",
    "FieldSpec",
    "find_irreducible",
    "build_clique",
    "build_independent_set",
    "coset_coloring",
    "frankl_deza_check",
    "theoretical_values",
    "verify_clique",
    "verify_coloring",
    "verify_independent_set",
    "SearchBudget",
    "grow_clique_heuristic",
    "max_clique",
    "max_independent_set",
]
