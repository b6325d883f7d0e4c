"""Dense desk-scale linear algebra: matrices, ground states, exact and Trotter evolution.

All matrices use little-endian basis labels: qubit 1 is the least significant
bit, so the matrix of a string is ``kron(P_n, ..., P_2, P_1)``.
"""

import math
from dataclasses import dataclass, field
from functools import lru_cache, reduce

import numpy as np
import scipy.linalg

from .exceptions import AmbiguousOverlapError, NumericError, ValidationError
from .pauli import PauliOperator, PauliString, PauliTerm
from .utils.validation import (MAX_DENSE_QUBITS, check_hermitian_matrix,
                               check_pauli_operator, check_positive_int,
                               check_square_matrix)

PAULI_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

# fourth-order step weights, p1 = p2 = p4 = p5, p3 = 1 - 4 p1
P_FOURTH = 1.0 / (4.0 - 4.0 ** (1.0 / 3.0))
FOURTH_ORDER_WEIGHTS = (P_FOURTH, P_FOURTH, 1.0 - 4.0 * P_FOURTH, P_FOURTH, P_FOURTH)


def string_matrix(s):
    """Dense matrix of one Pauli string (cached, read-only)."""
    if isinstance(s, str):
        s = PauliString.from_label(s)
    if s.n_qubits > MAX_DENSE_QUBITS:
        raise NumericError(f"{s.n_qubits} qubits exceeds dense cap {MAX_DENSE_QUBITS}")
    return _string_matrix(s.label)


@lru_cache(maxsize=4096)
def _string_matrix(label):
    mat = reduce(np.kron, [PAULI_MATRICES[p] for p in label], np.eye(1, dtype=complex))
    mat.setflags(write=False)
    return mat


def to_dense_matrix(op):
    """Dense ``2**n x 2**n`` matrix of a :class:`PauliOperator`."""
    check_pauli_operator(op, max_qubits=MAX_DENSE_QUBITS)
    dim = 2 ** op.n_qubits
    out = np.zeros((dim, dim), dtype=complex)
    for s, c in op.items():
        out += c * string_matrix(s)
    return out


def _dense(op):
    if isinstance(op, PauliOperator):
        return to_dense_matrix(op)
    return check_square_matrix(op)


def code_space_basis(projector, tol=1e-8):
    """Orthonormal basis (columns) of the +1 range of a Hermitian projector."""
    projector = check_hermitian_matrix(projector, "projector")
    w, v = np.linalg.eigh(projector)
    keep = w > 1 - tol
    if not keep.any():
        raise NumericError("projector range is zero-dimensional")
    return v[:, keep]


def restricted_matrix(op, projector):
    basis = code_space_basis(projector)
    return basis.conj().T @ _dense(op) @ basis, basis


def spectrum(op, projector=None):
    """Ascending eigenvalues, optionally restricted to a projector's range."""
    mat = _dense(op)
    if projector is not None:
        mat, _ = restricted_matrix(mat, projector)
    check_hermitian_matrix(mat, "operator")
    return np.linalg.eigvalsh(mat)


def ground_state(op, projector=None):
    """Lowest eigenvalue and a normalized eigenvector in the full space."""
    mat = _dense(op)
    check_hermitian_matrix(mat, "operator")
    basis = None
    if projector is not None:
        mat, basis = restricted_matrix(mat, projector)
    w, v = np.linalg.eigh(mat)
    vec = v[:, 0]
    if basis is not None:
        vec = basis @ vec
    vec = vec / np.linalg.norm(vec)
    return float(w[0]), vec


def exact_evolution(op, t):
    """``exp(-i H t)`` via the eigendecomposition of the Hermitian matrix."""
    mat = check_hermitian_matrix(_dense(op), "operator")
    w, v = np.linalg.eigh(mat)
    return (v * np.exp(-1j * w * t)) @ v.conj().T


def pauli_exponential(coefficient, string, t):
    """``exp(-i c t P)`` in closed form, using ``P**2 = I``."""
    theta = coefficient * t
    mat = string_matrix(string)
    return math.cos(theta) * np.eye(len(mat)) - 1j * math.sin(theta) * mat


@dataclass
class TrotterPlan:
    """Ordered Hermitian terms, product-formula order, step count and time.

    Orders 3 and 4 act on a two-operand split: ``A`` is the sum of the Z-only
    terms and ``S`` the remainder, unless ``bipartition`` is given explicitly
    as a pair of PauliOperators.
    """

    terms: list
    order: int = 1
    steps: int = 1
    time: float = 1.0
    bipartition: tuple = field(default=None)

    def __post_init__(self):
        self.terms = [t if isinstance(t, PauliTerm) else PauliTerm(*t) for t in self.terms]
        if self.order not in (1, 2, 3, 4):
            raise ValidationError(f"Trotter order must be 1..4, got {self.order}")
        check_positive_int(self.steps, "steps")
        for t in self.terms:
            if abs(complex(t.coefficient).imag) > 1e-12:
                raise ValidationError(f"term {t} has a complex coefficient")
        if self.order >= 3 and self.bipartition is None and self.terms:
            n = self.terms[0].string.n_qubits
            a = PauliOperator(n, [(t.string, t.coefficient) for t in self.terms
                                  if t.string.is_z_only()])
            s = PauliOperator(n, [(t.string, t.coefficient) for t in self.terms
                                  if not t.string.is_z_only()])
            self.bipartition = (a, s)

    @property
    def n_qubits(self):
        if self.terms:
            return self.terms[0].string.n_qubits
        return self.bipartition[0].n_qubits

    @classmethod
    def from_operator(cls, op, order=1, steps=1, time=1.0):
        """Plan over the operator's terms in sorted-label order."""
        return cls([t for t in op.terms()], order, steps, time)


def _sweep(terms, dt):
    dim = 2 ** terms[0].string.n_qubits
    u = np.eye(dim, dtype=complex)
    for term in terms:
        # the first term in the plan acts first
        u = pauli_exponential(complex(term.coefficient).real, term.string, dt) @ u
    return u


def trotter_evolution(plan):
    """Product-formula approximation of ``exp(-i H t)`` for a :class:`TrotterPlan`.

    For orders 1 and 2 the first term of the plan acts first on the state,
    matching circuit order. Orders 3 and 4 multiply the two-operand factors
    left to right exactly as the product formula is written.
    """
    n, t = plan.steps, plan.time
    if plan.order == 1:
        step = _sweep(plan.terms, t / n)
    elif plan.order == 2:
        half = t / (2 * n)
        step = _sweep(plan.terms[::-1], half) @ _sweep(plan.terms, half)
    else:
        if plan.bipartition is None:
            raise ValidationError("orders 3 and 4 need an (A, S) bipartition")
        a, s = plan.bipartition
        ea = lambda x: exact_evolution(a, x) if len(a) else np.eye(2 ** a.n_qubits)
        es = lambda x: exact_evolution(s, x) if len(s) else np.eye(2 ** s.n_qubits)
        if plan.order == 3:
            factors = [ea(7 * t / (24 * n)), es(2 * t / (3 * n)), ea(3 * t / (4 * n)),
                       es(-2 * t / (3 * n)), ea(-t / (24 * n)), es(t / n)]
        else:
            factors = []
            for p in FOURTH_ORDER_WEIGHTS:
                factors += [ea(p * t / (2 * n)), es(p * t / n), ea(p * t / (2 * n))]
        # multiplied left to right as the formula is written
        step = np.eye(2 ** plan.n_qubits, dtype=complex)
        for f in factors:
            step = step @ f
    return np.linalg.matrix_power(step, n)


ENERGY_METHODS = ("eigenphase", "expectation")


def trotter_energy(u, t, reference_ground, tie_tol=1e-9, method="eigenphase"):
    """Energy read off an evolution operator ``u`` over time ``t``.

    ``"eigenphase"`` returns ``-arg(lambda)/t`` for the eigenvector of ``u``
    with the largest overlap with ``reference_ground``; a tie within
    ``tie_tol`` raises :class:`AmbiguousOverlapError`. ``"expectation"``
    returns ``-arg(<g|u|g>)/t`` for the reference state itself.
    """
    u = check_square_matrix(u, "evolution")
    if t <= 0:
        raise ValidationError("time must be positive")
    ref = np.asarray(reference_ground, dtype=complex)
    if method == "expectation":
        amp = ref.conj() @ u @ ref
        if abs(amp) < 1e-12:
            raise NumericError("reference state has no overlap with its evolved image")
        return float(-np.angle(amp) / t)
    if method != "eigenphase":
        raise ValidationError(f"energy method must be one of {ENERGY_METHODS}")
    # complex Schur form of a normal matrix is diagonal with unitary vectors
    tri, v = scipy.linalg.schur(u, output="complex")
    w = np.diag(tri)
    overlaps = np.abs(v.conj().T @ ref)
    order = np.argsort(overlaps)[::-1]
    if len(order) > 1 and overlaps[order[0]] - overlaps[order[1]] <= tie_tol:
        raise AmbiguousOverlapError(
            f"two eigenvectors tie for maximum overlap ({overlaps[order[0]]:.6f})")
    return float(-np.angle(w[order[0]]) / t)
