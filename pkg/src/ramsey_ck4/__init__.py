"""Monochromatic connected nK4 certificates in 2-colorings of complete graphs."""
from .coloring import Color, EdgeColoring, components, connected_color, parse_coloring, serialize
from .combine import PartitionGrouping, PartitionInput, combine, validate_grouping
from .extract import Certificate, TheoremViolation, Unresolved, extract, verify_certificate
from .extremal import build_extremal, check_absence
from .kernels import (
    SearchBudgetExceeded,
    find_mono_k4,
    find_triangle_matching,
    greedy_mono_k4_packing,
    max_k4_packing,
    max_matching,
)
from .oracles import f, ramsey_match_quads, ramsey_triangles_quads

__all__ = [
    "Certificate",
    "Color",
    "EdgeColoring",
    "PartitionGrouping",
    "PartitionInput",
    "SearchBudgetExceeded",
    "TheoremViolation",
    "Unresolved",
    "build_extremal",
    "check_absence",
    "combine",
    "components",
    "connected_color",
    "extract",
    "f",
    "find_mono_k4",
    "find_triangle_matching",
    "greedy_mono_k4_packing",
    "max_k4_packing",
    "max_matching",
    "parse_coloring",
    "ramsey_match_quads",
    "ramsey_triangles_quads",
    "serialize",
    "validate_grouping",
    "verify_certificate",
]
