"""Fermion-to-qubit mappings: Jordan-Wigner, Bravyi-Kitaev and the superfast encoding."""

from .bksf import (DOUBLE_EXCITATION_MODES, EdgeOperators, StabilizerSet, bksf_transform,
                   code_space_projector, edge_operators, loop_stabilizer, number_operator,
                   stabilizers, vacuum_state, vanishes_on_code_space)
from .bravyi_kitaev import FenwickTree, bravyi_kitaev
from .graph import Loop, ModeGraph, build_mode_graph, cycle_basis, make_loop
from .jordan_wigner import jordan_wigner
from .mappers import (BKSFMapper, BravyiKitaevMapper, JordanWignerMapper, MAPPERS,
                      get_mapper)

__all__ = [
    "BKSFMapper", "BravyiKitaevMapper", "DOUBLE_EXCITATION_MODES", "EdgeOperators", "FenwickTree",
    "JordanWignerMapper", "Loop", "MAPPERS", "ModeGraph", "StabilizerSet",
    "bksf_transform", "bravyi_kitaev", "build_mode_graph", "code_space_projector",
    "cycle_basis", "edge_operators", "get_mapper", "jordan_wigner", "loop_stabilizer",
    "make_loop", "number_operator", "stabilizers", "vacuum_state",
    "vanishes_on_code_space",
]
