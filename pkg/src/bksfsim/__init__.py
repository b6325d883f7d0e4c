"""Fermion-to-qubit mappings, superfast-encoding stabilizers, Trotter simulation and gate counts."""

from .circuits import (Circuit, Gate, OrderingRecord, OrderingSearch, compile_pauli_rotation,
                       gate_count, magnitude_ordering, random_orderings)
from .exceptions import (BKSFError, IntegralParseError, NumericError, TransformError,
                         ValidationError)
from .fermion import (FermionOperator, FermionTerm, IntegralTable, ann,
                      build_molecular_hamiltonian, cre, load_h2, load_integrals,
                      parse_integral_file)
from .pauli import PauliOperator, PauliString, PauliTerm
from .simulator import (TrotterPlan, exact_evolution, ground_state, spectrum,
                        to_dense_matrix, trotter_energy, trotter_evolution)
from .transforms import (BKSFMapper, BravyiKitaevMapper, JordanWignerMapper,
                         bksf_transform, bravyi_kitaev, get_mapper, jordan_wigner)

__version__ = "0.1.0"

__all__ = [
    "BKSFError", "BKSFMapper", "BravyiKitaevMapper", "Circuit", "FermionOperator",
    "FermionTerm", "Gate", "IntegralParseError", "IntegralTable", "JordanWignerMapper",
    "NumericError", "OrderingRecord", "OrderingSearch", "PauliOperator", "PauliString",
    "PauliTerm", "TransformError", "TrotterPlan", "ValidationError", "ann",
    "bksf_transform", "bravyi_kitaev", "build_molecular_hamiltonian",
    "compile_pauli_rotation", "cre", "exact_evolution", "gate_count", "get_mapper",
    "ground_state", "jordan_wigner", "load_h2", "load_integrals", "magnitude_ordering",
    "parse_integral_file", "random_orderings", "spectrum", "to_dense_matrix",
    "trotter_energy", "trotter_evolution",
]
