"""Explicit constructors for the tensors used throughout the package."""
from .records import FAMILIES, SolutionRecord
from .pentagon import (
    PENTAGON_COMPONENTS,
    isolated_pair_matrix,
    pentagon_components,
    pentagon_from_components,
    pentagon_table,
    pentagonal_ame,
    pentagonal_isolated,
)
from .hexagon import (
    A_MAX_TYPE1,
    A_RANGE_TYPE3,
    HEXAGON_COMPONENTS,
    branch_differences,
    hexagon_components,
    hexagon_from_components,
    hexagon_table,
    hexagonal_p2,
    hexagonal_record,
    hexagonal_type1,
    hexagonal_type3,
    type1_ds013,
    type1_node13_lambda2,
)
from .states import ame_6_2, ghz, graph_state, wheel_edges, wheel_graph_state
from .dualunitary import (
    wheel_frame_tensor,
    dual_defect,
    dual_unitary,
    frame_gate_count,
    frame_schedule,
    frame_tensor,
    reshuffle_defect,
    unitarity_defect,
)
