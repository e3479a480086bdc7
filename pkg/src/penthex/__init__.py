"""Decide, build and count fullerene patches from their boundary codes."""

from .boundary_code import (
    PENTAGON,
    BoundaryCode,
    SequenceList,
    canonical_rotation,
    complement,
    f5_of,
    format_list,
    is_rotation,
    parse,
)
from .errors import PentHexError
from .oracle import SearchConfig, count_distinct, exists_hex, fill_search
from .patch_graph import (
    Patch,
    PlaneGraph,
    canonical_form,
    cut,
    equivalent,
    find_1bend_path,
    reverse_cut,
    validate_patch,
)
from .sequence_ops import TypeI, TypeII, TypeIII, TypeIV, apply, enumerate_ops, iv_closure, parse_op
from .solver import Answer, SolverConfig, build_witness, count_solutions, decide, test_recurse

__version__ = "0.1.0"

__all__ = [
    "PENTAGON", "BoundaryCode", "SequenceList", "canonical_rotation", "complement", "f5_of",
    "format_list", "is_rotation", "parse", "PentHexError", "SearchConfig", "count_distinct",
    "exists_hex", "fill_search", "Patch", "PlaneGraph", "canonical_form", "cut", "equivalent",
    "find_1bend_path", "reverse_cut", "validate_patch", "TypeI", "TypeII", "TypeIII", "TypeIV",
    "apply", "enumerate_ops", "iv_closure", "parse_op", "Answer", "SolverConfig", "build_witness",
    "count_solutions", "decide", "test_recurse",
]
