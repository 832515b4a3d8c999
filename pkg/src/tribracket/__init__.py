"""Tribrackets, multi-tribrackets and region-coloring counts of typed link diagrams."""

from .tensor import (
    AlexanderParams,
    AxiomError,
    AxiomReport,
    GroupTable,
    ParameterError,
    StructureError,
    Tensor3,
    TribracketError,
    VerticalTensor3,
    check_invertibility,
    check_r3_identity,
    gen_alexander,
    gen_dehn,
    is_tribracket,
    to_horizontal,
    to_vertical,
)
from .moveset import (
    MoveObligation,
    MoveSet,
    MultiTribracket,
    builtin_moveset,
    check_multitribracket,
    check_obligation,
)

from .diagram import (
    Crossing,
    DiagramError,
    MoveError,
    Region,
    TypedDiagram,
    classify_crossings,
    parse_diagram,
    read_diagrams,
    serialize_diagram,
)
from .moves import Move, apply_move, random_move
from .counting import (
    ColoringConstraint,
    ColoringCount,
    build_constraints,
    count,
    count_backtrack,
    count_linear,
    count_oracle,
)
from .search import SearchSpec, enumerate_structures, search_companion
from .table import TableReport, compute_table

__version__ = "0.1.0"
