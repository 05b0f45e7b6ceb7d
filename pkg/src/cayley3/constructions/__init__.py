from .babai import babai_contract, subgroup_action
from .fatten import PlaneGraph, fatten_complex, fatten_plane_graph
from .flags import FlagComplex, flag_complex
from .slices import SlicePattern, check_slice_pattern, slice_pattern

__all__ = [
    "PlaneGraph",
    "fatten_plane_graph",
    "fatten_complex",
    "FlagComplex",
    "flag_complex",
    "SlicePattern",
    "slice_pattern",
    "check_slice_pattern",
    "babai_contract",
    "subgroup_action",
]
