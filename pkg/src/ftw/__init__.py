"""Finite formal topology workbench.

Covering relations on finite bases, their frames of saturated subsets,
derived spaces, logical-law deciders, formal points and morphisms, all
computed exactly by exhaustive search over bitmask subsets.
"""
from .bits import Subset
from .cover import (CoverAxioms, FormalTopology, PointSetSpace, adjoin_top, booleanization,
                    closed_subspace, dm_cover, double_negation_space, export_table,
                    extract_presentation, generate_from_axioms, induced_poset, one_point_space,
                    point_set_cover, same_cover, table_space, validate_axioms)
from .document import Document, build_poset, build_space, load_document, parse_document
from .errors import (DocumentError, FrameError, FTWError, MismatchedSpacesError,
                     NotACoverError, SizeCapError, Verdict)
from .frame import (Frame, LawReport, LawResult, beta_cover, beta_witness, check_frame_laws,
                    enumerate_frame, is_boolean, is_de_morgan, is_nontrivial,
                    is_strongly_de_morgan, law_report, minimal_subcover, split_subcover)
from .maps import (Morphism, PositivityPredicate, canonical_positivity, compose,
                   enumerate_points, find_isomorphism, identity_morphism, is_point,
                   morphisms_equal, morphisms_from, validate_morphism)
from .order import (DEFAULT_MAX_BASE, LatticeInfo, Poset, analyze_lattice, down_set,
                    find_order_isomorphism, validate_poset)
from .report import AnalyzeOptions, emit_dot, run_analyze

__version__ = "0.1.0"

__all__ = [
    "adjoin_top",
    "analyze_lattice",
    "AnalyzeOptions",
    "beta_cover",
    "beta_witness",
    "booleanization",
    "build_poset",
    "build_space",
    "canonical_positivity",
    "check_frame_laws",
    "closed_subspace",
    "compose",
    "CoverAxioms",
    "DEFAULT_MAX_BASE",
    "dm_cover",
    "Document",
    "DocumentError",
    "double_negation_space",
    "down_set",
    "emit_dot",
    "enumerate_frame",
    "enumerate_points",
    "export_table",
    "extract_presentation",
    "find_isomorphism",
    "find_order_isomorphism",
    "FormalTopology",
    "Frame",
    "FrameError",
    "FTWError",
    "generate_from_axioms",
    "identity_morphism",
    "induced_poset",
    "is_boolean",
    "is_de_morgan",
    "is_nontrivial",
    "is_point",
    "is_strongly_de_morgan",
    "LatticeInfo",
    "law_report",
    "LawReport",
    "LawResult",
    "load_document",
    "minimal_subcover",
    "MismatchedSpacesError",
    "Morphism",
    "morphisms_equal",
    "morphisms_from",
    "NotACoverError",
    "one_point_space",
    "parse_document",
    "point_set_cover",
    "PointSetSpace",
    "Poset",
    "PositivityPredicate",
    "run_analyze",
    "same_cover",
    "SizeCapError",
    "split_subcover",
    "Subset",
    "table_space",
    "validate_axioms",
    "validate_morphism",
    "validate_poset",
    "Verdict",
]
