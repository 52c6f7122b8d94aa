"""Desk-scale toolkit for triangles, additive matchings and removal numbers
in cyclic groups Z/NZ."""

from .bounds import (CompanionFunction, DensityBoundProfile, behrend_lower_envelope,
                     epsilon_bound, joint_h, minimal_series_k, monotone_condition,
                     series_condition)
from .extraction import (ClaimStatistics, DilationWindow, ExtractionParams,
                         ExtractionReport, choose_window, classify_triangles,
                         estimate_claims, extract_matching, params_from_profile,
                         project_good, sample_window)
from .generators import generate_instance, parse_generator_spec
from .group import (Element, IndexedTripleFamily, Modulus, TripleSystem,
                    is_triangle, primality, signed_rep)
from .matching import (MatchingCertificate, ProgressionFreeSet, behrend_construction,
                       matching_from_progression_free, max_matching_exhaustive,
                       minimal_admissible_modulus, verify_matching)
from .reductions import (IntegerTripleSystem, embed_interval, find_prime_in_range,
                         lift_and_split, verify_preservation)
from .removal import (RegularityHypotheses, RemovalResult, check_regularity_hypotheses,
                      epsilon_delta_experiment, min_deletion_exact,
                      remark_converse_check)
from .triangles import (DegreeProfile, count_triangles_convolution,
                        count_triangles_naive, degree_profile, list_triangles,
                        max_disjoint_triangles_greedy)

__version__ = "0.1.0"

__all__ = [
    "ClaimStatistics", "CompanionFunction", "DegreeProfile", "DensityBoundProfile",
    "DilationWindow", "Element", "ExtractionParams", "ExtractionReport",
    "IndexedTripleFamily", "IntegerTripleSystem", "MatchingCertificate", "Modulus",
    "ProgressionFreeSet", "RegularityHypotheses", "RemovalResult", "TripleSystem",
    "behrend_construction", "behrend_lower_envelope", "check_regularity_hypotheses",
    "choose_window", "classify_triangles", "count_triangles_convolution",
    "count_triangles_naive", "degree_profile", "embed_interval", "epsilon_bound",
    "epsilon_delta_experiment", "estimate_claims", "extract_matching",
    "find_prime_in_range", "generate_instance", "is_triangle", "joint_h",
    "lift_and_split", "list_triangles", "matching_from_progression_free",
    "max_disjoint_triangles_greedy", "max_matching_exhaustive",
    "min_deletion_exact", "minimal_admissible_modulus", "minimal_series_k",
    "monotone_condition", "params_from_profile", "parse_generator_spec",
    "primality", "project_good", "remark_converse_check", "sample_window",
    "series_condition", "signed_rep", "verify_matching", "verify_preservation",
]
