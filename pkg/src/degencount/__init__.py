"""Constant-space homomorphism, subgraph and induced-subgraph counting in
degenerate host graphs, driven by DAG elimination forests."""

__version__ = "0.1.0"

from .graph import (EdgeListError, Graph, GraphTooLarge, OrientedDag, automorphism_count,
                    canonical_label, degeneracy_order, degeneracy_orientation, is_isomorphic,
                    parse_edge_list, read_edge_list, write_edge_list)
from .orientations import acyclic_orientations, count_acyclic_orientations_via_chromatic
from .elimination import EliminationForest, check_dtd, dtd_dag, dtd_graph, validate_forest
from .minors import derive_h1_h2, dtd_le2_by_obstructions, induced_minor_contains
from .decomposition import (DagTreeDecomposition, associated_family, bip, dtw_bruteforce, dtw_graph,
                            to_hypergraph, treedepth_bruteforce, treewidth_bruteforce,
                            validate_dtd_decomposition)
from .homcount import HomStats, PartialHom, count_hom, count_hom_dag, extension_enumerate
from .counting import Expansion, count_ind, count_sub, ind_expansion, spasm, sub_expansion
from .oracle import brute_hom, brute_hom_dag, brute_ind, brute_sub

__all__ = [
    "EdgeListError", "Graph", "GraphTooLarge", "OrientedDag", "automorphism_count",
    "canonical_label", "degeneracy_order", "degeneracy_orientation", "is_isomorphic",
    "parse_edge_list", "read_edge_list", "write_edge_list", "acyclic_orientations",
    "count_acyclic_orientations_via_chromatic", "EliminationForest", "check_dtd", "dtd_dag",
    "dtd_graph", "validate_forest", "derive_h1_h2", "dtd_le2_by_obstructions",
    "induced_minor_contains", "DagTreeDecomposition", "associated_family", "bip", "dtw_bruteforce",
    "dtw_graph", "to_hypergraph", "treedepth_bruteforce", "treewidth_bruteforce",
    "validate_dtd_decomposition", "HomStats", "PartialHom", "count_hom", "count_hom_dag",
    "extension_enumerate", "Expansion", "count_ind", "count_sub", "ind_expansion", "spasm",
    "sub_expansion", "brute_hom", "brute_hom_dag", "brute_ind", "brute_sub",
]
