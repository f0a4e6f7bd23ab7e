"""Matrix-product factorization of graphs: ``A = BC`` over adjacency matrices."""

from .graph import (
    SimpleGraph,
    cartesian_product,
    cayley_z2,
    components,
    disjoint_union,
    grid_graph,
    make_complete,
    make_cycle,
    make_path,
    make_petersen,
    torus_graph,
)
from .product import (
    Factorization,
    FailureReport,
    WeightedDigraph,
    degree_product_holds,
    k_component_degree_constancy,
    product,
    verify_factorization,
)
from .union import build_union, diamond_condition, find_matched_pairs, is_alone, phi_homomorphism
from .automorphism import (
    automorphisms,
    center,
    factor_by_matching,
    involution_obstruction,
    matching_involutions,
    unique_shortest_path_pairs,
)
from .search import SearchBudget, SearchOutcome, factor, forest_isomorphism, oracle_factorizations, pair_up_components
from .constructions import factor_doubled_forest, factor_grid, factor_torus, factor_torus_even, factor_torus_odd
from .classify import degree_quad_check, is_c4_free, prime_by_degree, prime_test
from .audit import audit_factorization

__version__ = "0.1.0"
