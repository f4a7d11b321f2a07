"""Generalized rectangular diagrams of Legendrian graphs.

Diagrams, their elementary-move calculus, executable decompositions of the
compound moves, the bijection with fence diagrams, and combinatorial front
extraction (ribbon graphs, Thurston-Bennequin numbers, SVG rendering).
"""

from .core import GridDiagram, canonicalize, crossings, edges, reflect
from .errors import (
    BoundExceeded,
    EmptyDiagram,
    FinalMismatch,
    GridLegError,
    InternalVerificationFailed,
    InvalidInput,
    LoopEdge,
    NotAKnot,
    PreconditionViolated,
)
from .moves import apply_move, enumerate_moves, invert_move, mirror_move, move_type

__all__ = [
    "GridDiagram",
    "canonicalize",
    "edges",
    "crossings",
    "reflect",
    "apply_move",
    "enumerate_moves",
    "invert_move",
    "mirror_move",
    "move_type",
    "GridLegError",
    "InvalidInput",
    "PreconditionViolated",
    "EmptyDiagram",
    "NotAKnot",
    "LoopEdge",
    "BoundExceeded",
    "FinalMismatch",
    "InternalVerificationFailed",
]
