"""Jordan-Wigner encoding: mode j lives on qubit j with a Z string below it."""

from ..pauli import PauliOperator
from ..utils.validation import check_fermion_operator


def _ladder(n_qubits, mode, dagger):
    # a_j^ = (X - iY)/2 on qubit j times Z on qubits 1..j-1
    zs = {q: "Z" for q in range(1, mode)}
    x = PauliOperator.from_sparse(n_qubits, {**zs, mode: "X"}, 0.5)
    y = PauliOperator.from_sparse(n_qubits, {**zs, mode: "Y"}, -0.5j if dagger else 0.5j)
    return x + y


def map_terms(op, ladder, n_qubits, tol):
    """Expand every term through ``ladder(mode, dagger) -> PauliOperator``."""
    cache = {}
    out = PauliOperator(n_qubits)
    for term in op.terms:
        acc = PauliOperator.identity(n_qubits, term.coefficient)
        for f in term.factors:
            key = (f.mode, f.dagger)
            if key not in cache:
                cache[key] = ladder(f.mode, f.dagger)
            acc = acc * cache[key]
        out = out + acc
    return out.canonicalize(tol)


def jordan_wigner(op, n_qubits=None, tol=1e-12):
    """Map a :class:`FermionOperator` to a :class:`PauliOperator` on ``n_modes`` qubits."""
    op = check_fermion_operator(op)
    n = op.n_modes if n_qubits is None else n_qubits
    if n < op.n_modes:
        raise ValueError(f"{n} qubits cannot hold {op.n_modes} modes")
    return map_terms(op, lambda m, d: _ladder(n, m, d), n, tol)


def jordan_wigner_ladder(n_qubits, mode, dagger=True):
    """Pauli image of a single ladder operator."""
    return _ladder(n_qubits, mode, dagger)
