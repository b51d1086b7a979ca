"""cubefree: dense-bitset toolkit for pattern-free subsets of Z_N and [N].

Generates and tests projective cubes, builds the extremal constructions,
solves exact maximum-subset problems for the cube / diagonal / dilation
pattern families, and verifies the supporting counting identities
exhaustively at desk scale.
"""

__version__ = "0.1.0"

from ._kernels import BACKEND
from .ambient import Ambient, DenseSet, Factorization, factorize, preimage_count
from .constructions import (
    alternating_chain_set,
    block_partition,
    chain_decomposition,
    interval_construction,
    layers_integers,
    layers_prime_power,
    matrix_coord,
    matrix_coord_inverse,
    residue_construction,
)
from .cubes import (
    CubeWitness,
    GeneratorMultiset,
    diagonal_witness,
    find_cube,
    is_cube_free,
    project_cube,
    shifted_intersection,
)
from .lemmas import (
    IncidenceReport,
    IndexedFamily,
    SubsetSumProfile,
    cauchy_davenport_check,
    family_diagonal,
    family_prime_power,
    incidence_report,
    s_t_set,
    sumset,
    verify_s_t_lemma,
    zero_subset_sum,
)
from .search import (
    CUBE,
    DIAGONAL,
    PAIR,
    CapExceededError,
    Problem,
    SearchResult,
    bound_value,
    branch_and_bound_max,
    brute_force_max,
    chain_dp_max_pairfree_interval,
    forbidden_masks,
    graph_dp_max_pairfree_cyclic,
    satisfies,
)

__all__ = [
    "Ambient", "DenseSet", "Factorization", "factorize", "preimage_count",
    "GeneratorMultiset", "CubeWitness", "project_cube", "find_cube",
    "is_cube_free", "shifted_intersection", "diagonal_witness",
    "residue_construction", "interval_construction", "chain_decomposition",
    "layers_integers", "layers_prime_power", "block_partition",
    "alternating_chain_set", "matrix_coord", "matrix_coord_inverse",
    "sumset", "cauchy_davenport_check", "s_t_set", "verify_s_t_lemma",
    "zero_subset_sum", "family_diagonal", "family_prime_power",
    "incidence_report", "SubsetSumProfile", "IndexedFamily", "IncidenceReport",
    "Problem", "SearchResult", "CapExceededError", "satisfies",
    "forbidden_masks", "brute_force_max", "branch_and_bound_max",
    "chain_dp_max_pairfree_interval", "graph_dp_max_pairfree_cyclic",
    "bound_value", "CUBE", "DIAGONAL", "PAIR", "BACKEND",
]
