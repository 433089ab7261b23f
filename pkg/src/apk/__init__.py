"""Extended multi-segments for local Arthur packets of split SO(2n+1) and Sp(2n)."""

from .arthur import (Character, LanglandsData, PacketMember, aubert_dual, character_of,
                     langlands_separated, packet_count, packet_enumerate, z_set)
from .ems import (AParameter, Block, ExtendedMultiSegment, ExtendedSegment, GroupSpec, RhoLabel,
                  Segment, SegmentError, Summand, normalize_row, seg_length, shift, sign_condition,
                  support, to_parameter, validate)
from .halfint import HalfInt
from .nonvanishing import nonzero, nonzero_nonneg
from .orders import enumerate_admissible_orders, reorder, swap_adjacent
from .symbol import render_symbol
from .transforms import algorithm_star, derivative_step, union_move

__version__ = "0.1.0"

__all__ = [
    "AParameter", "Block", "Character", "ExtendedMultiSegment", "ExtendedSegment", "GroupSpec",
    "HalfInt", "LanglandsData", "PacketMember", "RhoLabel", "Segment", "SegmentError", "Summand",
    "algorithm_star", "aubert_dual", "character_of", "derivative_step",
    "enumerate_admissible_orders", "langlands_separated", "nonzero", "nonzero_nonneg",
    "normalize_row", "packet_count", "packet_enumerate", "render_symbol", "reorder", "seg_length",
    "shift", "sign_condition", "support", "swap_adjacent", "to_parameter", "union_move",
    "validate", "z_set",
]
