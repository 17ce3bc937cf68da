"""Coarse Menger certificates for graphs excluding short binary-tree subdivisions."""

from __future__ import annotations

from .augment import (AugmentingSequence, Barrier, Setting, find_augmenting_sequence, get_paths,
                      is_jumping, jumps, menger_disjoint_paths, minimize_sequence, separate_all,
                      separate_tops, shortcut)
from .errors import (CapacityError, CoarseMengerError, DisciplineError, InputError, InvariantError,
                     PreconditionError)
from .graph import INF, Graph, ball, dist, induced_components, subpath
from .shrink import BiteClosure, carve, check_web_growth, close_bites, find_bite
from .solver import (ConstantTable, FarPaths, Separator, constants, solve, verify_certificate)
from .trees import SubdivisionWitness, contains_subdivision, make_binary_tree, pathwidth_exact

__all__ = [
    "AugmentingSequence", "Barrier", "BiteClosure", "CapacityError", "CoarseMengerError",
    "ConstantTable", "DisciplineError", "FarPaths", "Graph", "INF", "InputError", "InvariantError",
    "PreconditionError", "Separator", "Setting", "SubdivisionWitness", "ball", "carve",
    "check_web_growth", "close_bites", "constants", "contains_subdivision", "dist",
    "find_augmenting_sequence", "find_bite", "get_paths", "induced_components", "is_jumping",
    "jumps", "make_binary_tree", "menger_disjoint_paths", "minimize_sequence", "pathwidth_exact",
    "separate_all", "separate_tops", "shortcut", "solve", "subpath", "verify_certificate",
]
