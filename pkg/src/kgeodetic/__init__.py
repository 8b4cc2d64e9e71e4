"""Verification and search tools for k-geodetic digraphs close to the directed Moore bound."""

from .canon import automorphisms_found, canonical_digraph, canonical_form, canonical_labeling
from .certificates import (
    check_charpoly_form, check_main_equation, check_trace_bound, check_trace_identities,
    exceptional_pairs, exceptional_table, inequality_one, inequality_two, outlier_regular_filter,
    quotient_certificates, structural_verdicts, type_a_filter, type_b_filter,
)
from .digraph import (
    ArcListError, Digraph, degrees, distance_matrix, is_diregular, is_out_regular,
    parse_arc_list, read_arc_list, serialize_arc_list,
)
from .exact import IntMatrix, IntPolynomial, char_poly, is_irreducible_small, newton_power_sums
from .geodecity import (
    GeodecityReport, count_walks_upto, excess, is_k_geodetic, moore_bound, outlier_map,
    verify_outlier_automorphism,
)
from .permutation import OrbitPartition, Permutation, PermutationStructure, orbits, permutation_structure
from .quotient import QuotientPseudodigraph, equitable_check, quotient, verify_lemma_properties
from .report import CertificateReport, StructuralCaseReport
from .search import SearchConfig, SearchResult, find_cage, generate, verify_excess_one_nonexistence

__version__ = "0.1.0"
