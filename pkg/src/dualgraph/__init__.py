"""Weighted dual graphs of boundary curves: rewrite moves, normal forms and classification."""
from .classifier import ClassificationVerdict, build_template, check_witness, classify, explain
from .dsl import format_graph, format_weights, parse_graph, parse_moves, to_dot
from .errors import *  # noqa: F401,F403
from .graph import (
    CanonicalForm,
    DualGraph,
    IntersectionMatrix,
    Shape,
    canonicalize,
    intersection_matrix,
    shape,
)
from .intersection import (
    contracts_to_zero_vertex,
    determinant,
    inertia,
    is_contractible,
    is_contractible_onto,
    is_negative_definite,
)
from .moves import (
    BlowDown,
    Elementary,
    InnerBlowUp,
    MoveTrace,
    OuterBlowUp,
    apply_trace,
    blow_down,
    blow_up_inner,
    blow_up_outer,
    elementary,
    elementary_move,
)
from .normal_forms import (
    BranchDecomposition,
    FibrationMarker,
    branch_decomposition,
    circular_form,
    fibration_markers,
    linear_form,
    minimalize,
    slide_zero_pair,
    standardize_circular,
    standardize_linear,
    transfer_weight,
)

__version__ = "0.1.0"
