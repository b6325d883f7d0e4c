"""Lowering Pauli exponentials to gates, gate counting, and term-ordering search."""

import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .exceptions import ValidationError
from .pauli import PauliTerm, weight_profile
from .simulator import (PAULI_MATRICES, TrotterPlan, ground_state, trotter_energy,
                        trotter_evolution)
from .utils.validation import MAX_DENSE_QUBITS, check_pauli_operator, check_positive_int

GATE_KINDS = ("H", "RX", "RZ", "CNOT")
RNG_ALGORITHM = "numpy.random.PCG64(seed, index).permutation"


@dataclass(frozen=True)
class Gate:
    """One gate; qubits are 1-based. RX angles are restricted to +-pi/2."""

    kind: str
    qubits: tuple
    angle: float = None

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValidationError(f"unknown gate kind {self.kind!r}")
        if self.kind == "CNOT":
            if len(self.qubits) != 2 or self.qubits[0] == self.qubits[1]:
                raise ValidationError(f"bad CNOT operands {self.qubits}")
        elif len(self.qubits) != 1:
            raise ValidationError(f"{self.kind} acts on one qubit")
        if self.kind == "RX" and self.angle not in (math.pi / 2, -math.pi / 2):
            raise ValidationError("RX angle must be +pi/2 or -pi/2")
        if self.kind in ("RX", "RZ") and not math.isfinite(self.angle):
            raise ValidationError("rotation angle must be finite")

    def to_text(self):
        q = " ".join(str(x) for x in self.qubits)
        if self.kind == "RX":
            return f"RX {q} {'+' if self.angle > 0 else '-'}pi/2"
        if self.kind == "RZ":
            return f"RZ {q} {self.angle!r}"
        return f"{self.kind} {q}"

    def matrix(self):
        """2x2 matrix of a single-qubit gate."""
        if self.kind == "H":
            return np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
        c, s = math.cos(self.angle / 2), math.sin(self.angle / 2)
        if self.kind == "RX":
            return c * PAULI_MATRICES["I"] - 1j * s * PAULI_MATRICES["X"]
        if self.kind == "RZ":
            return np.diag([complex(c, -s), complex(c, s)])
        raise ValidationError("CNOT has no 2x2 matrix")


@dataclass
class Circuit:
    n_qubits: int
    gates: list = field(default_factory=list)

    def __post_init__(self):
        for g in self.gates:
            if any(not 1 <= q <= self.n_qubits for q in g.qubits):
                raise ValidationError(f"gate {g.to_text()} outside 1..{self.n_qubits}")

    def __len__(self):
        return len(self.gates)

    def __add__(self, other):
        if self.n_qubits != other.n_qubits:
            raise ValidationError("circuits act on different qubit counts")
        return Circuit(self.n_qubits, self.gates + other.gates)

    def counts(self):
        c = Counter({k: 0 for k in GATE_KINDS})
        c.update(g.kind for g in self.gates)
        return c

    def to_text(self):
        return "\n".join([f"qubits {self.n_qubits}"] + [g.to_text() for g in self.gates])

    @classmethod
    def from_text(cls, text):
        lines = [ln.split("#", 1)[0].split() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines or lines[0][0] != "qubits":
            raise ValidationError("circuit text must start with 'qubits <n>'")
        gates = []
        for tok in lines[1:]:
            kind = tok[0]
            if kind == "CNOT":
                gates.append(Gate(kind, (int(tok[1]), int(tok[2]))))
            elif kind == "RX":
                gates.append(Gate(kind, (int(tok[1]),),
                                  math.pi / 2 if tok[2].startswith("+") else -math.pi / 2))
            elif kind == "RZ":
                gates.append(Gate(kind, (int(tok[1]),), float(tok[2])))
            else:
                gates.append(Gate(kind, (int(tok[1]),)))
        return cls(int(lines[0][1]), gates)

    def to_matrix(self):
        """Dense unitary; the first gate in the list acts first."""
        dim = 2 ** self.n_qubits
        u = np.eye(dim, dtype=complex)
        for g in self.gates:
            u = _embed(g, self.n_qubits) @ u
        return u


def _embed(gate, n):
    dim = 2 ** n
    if gate.kind == "CNOT":
        c, t = gate.qubits[0] - 1, gate.qubits[1] - 1
        perm = np.zeros((dim, dim), dtype=complex)
        for b in range(dim):
            perm[b ^ (1 << t) if b >> c & 1 else b, b] = 1
        return perm
    q = gate.qubits[0] - 1
    # little-endian: qubit 1 is the rightmost tensor factor
    left = np.eye(2 ** (n - 1 - q))
    right = np.eye(2 ** q)
    return np.kron(np.kron(left, gate.matrix()), right)


def compile_pauli_rotation(term, scale=1.0):
    """Circuit for ``exp(-i * coeff * scale * P)`` up to global phase.

    Basis change (H for X, RX(+pi/2) for Y), a CNOT ladder collecting parity
    onto the highest involved qubit, ``RZ(2*coeff*scale)``, then the mirror
    image. The identity string compiles to an empty circuit.
    """
    coeff = complex(term.coefficient)
    if abs(coeff.imag) > 1e-12:
        raise ValidationError(f"cannot exponentiate complex coefficient {coeff}")
    s = term.string
    involved = s.support()
    gates = []
    if not involved:
        return Circuit(s.n_qubits, gates)
    basis = []
    for q in involved:
        if s[q] == "X":
            basis.append(Gate("H", (q,)))
        elif s[q] == "Y":
            basis.append(Gate("RX", (q,), math.pi / 2))
    ladder = [Gate("CNOT", (a, b)) for a, b in zip(involved, involved[1:])]
    undo = [Gate("RX", g.qubits, -math.pi / 2) if g.kind == "RX" else g for g in basis]
    gates = (basis + ladder + [Gate("RZ", (involved[-1],), 2 * coeff.real * scale)]
             + ladder[::-1] + undo)
    return Circuit(s.n_qubits, gates)


def compile_trotter_step(terms, scale, n_qubits):
    """Concatenated rotations for one first-order step over ``terms``."""
    circ = Circuit(n_qubits)
    for t in terms:
        circ = circ + compile_pauli_rotation(t, scale)
    return circ


def term_gate_count(string):
    weight, non_z = weight_profile(string)
    if weight == 0:
        return 0
    return 2 * non_z + 2 * (weight - 1) + 1


def gate_count(op):
    """Gates for one first-order step over all terms: ``(total, Counter by kind)``.

    The identity term contributes nothing (global phase).
    """
    profile = Counter({k: 0 for k in GATE_KINDS})
    for s, c in op.items():
        weight, non_z = weight_profile(s)
        if weight == 0:
            continue
        n_x = sum(1 for p in s.letters if p == "X")
        profile["H"] += 2 * n_x
        profile["RX"] += 2 * (non_z - n_x)
        profile["CNOT"] += 2 * (weight - 1)
        profile["RZ"] += 1
    return sum(profile.values()), profile


# --------------------------------------------------------------------------
# orderings

def evolution_terms(op):
    """Non-identity terms as real-coefficient :class:`PauliTerm` objects."""
    return [PauliTerm(complex(t.coefficient).real, t.string)
            for t in op.terms() if not t.string.is_identity()]


def magnitude_ordering(op):
    """Interleave ascending-|c| Z-only terms with ascending-|c| X/Y-bearing terms.

    Pattern ``Z1, XY1, Z2, XY2, ...``; once one group runs out the rest of the
    other follows. Ties are broken by the rendered label. The identity term
    is excluded.
    """
    key = lambda t: (abs(t.coefficient), t.string.label)
    terms = evolution_terms(op)
    z = sorted((t for t in terms if t.string.is_z_only()), key=key)
    xy = sorted((t for t in terms if not t.string.is_z_only()), key=key)
    out = []
    for k in range(max(len(z), len(xy))):
        if k < len(z):
            out.append(z[k])
        if k < len(xy):
            out.append(xy[k])
    return out


@dataclass
class OrderingRecord:
    """A term ordering and the energy errors it produced, keyed by step count."""

    ordering_id: str
    permutation: tuple
    seed: int = None
    energies: dict = field(default_factory=dict)
    errors: dict = field(default_factory=dict)

    def terms(self, base):
        return [base[k] for k in self.permutation]

    @property
    def single_step_error(self):
        if not self.errors:
            return math.inf
        return self.errors[min(self.errors)]


def _random_permutation(n_terms, seed, index):
    rng = np.random.Generator(np.random.PCG64([seed, index]))
    return tuple(int(k) for k in rng.permutation(n_terms))


def random_orderings(op, count, seed=42):
    """``count`` uniformly random permutations of the non-identity terms.

    Permutation ``k`` depends only on ``(seed, k)``.
    """
    if count < 1:
        raise ValidationError("count must be at least 1")
    m = len(evolution_terms(op))
    return [OrderingRecord(f"random-{k:04d}", _random_permutation(m, seed, k), seed)
            for k in range(count)]


def magnitude_record(op):
    base = evolution_terms(op)
    index = {t.string: k for k, t in enumerate(base)}
    return OrderingRecord("magnitude",
                          tuple(index[t.string] for t in magnitude_ordering(op)))


def ordering_scan(op, orderings, t, n_values, reference_ground, exact_energy,
                  order=1, energy="eigenphase"):
    """Evaluate each ordering at each step count; records sorted by single-step error.

    The identity coefficient of ``op`` is added back to every Trotter energy.
    ``energy`` selects the reading used by :func:`trotter_energy`.
    """
    base = evolution_terms(op)
    offset = complex(op.constant()).real
    out = []
    for rec in orderings:
        terms = rec.terms(base)
        for n in n_values:
            u = trotter_evolution(TrotterPlan(terms, order, n, t))
            e = trotter_energy(u, t, reference_ground, method=energy) + offset
            rec.energies[n] = e
            rec.errors[n] = abs(e - exact_energy)
        out.append(rec)
    return sorted(out, key=lambda r: (r.single_step_error, r.ordering_id))


class OrderingSearch(BaseEstimator):
    """Search term orderings of a qubit Hamiltonian for low first-order Trotter error.

    ``fit`` diagonalizes the Hamiltonian (inside ``projector``'s range when
    given), then scores the magnitude ordering and ``n_random`` seeded random
    permutations at every step count in ``steps``. ``energy`` is passed to
    :func:`~bksfsim.simulator.trotter_energy`.

    Attributes
    ----------
    exact_energy_ : float
    ground_state_ : ndarray
    records_ : list of OrderingRecord, best single-step error first
    best_ : OrderingRecord
    """

    def __init__(self, time=1.0, order=1, steps=tuple(range(1, 12)),
                 orderings="both", n_random=1000, seed=42, energy="eigenphase"):
        self.time = time
        self.order = order
        self.steps = steps
        self.orderings = orderings
        self.n_random = n_random
        self.seed = seed
        self.energy = energy

    def _candidates(self, op):
        if self.orderings not in ("magnitude", "random", "both"):
            raise ValidationError(f"unknown ordering mode {self.orderings!r}")
        out = []
        if self.orderings in ("magnitude", "both"):
            out.append(magnitude_record(op))
        if self.orderings in ("random", "both"):
            out.extend(random_orderings(op, self.n_random, self.seed))
        return out

    def fit(self, X, y=None, projector=None):
        X = check_pauli_operator(X, hermitian=True, max_qubits=MAX_DENSE_QUBITS)
        if self.time <= 0:
            raise ValidationError("time must be positive")
        steps = [check_positive_int(n, "steps") for n in self.steps]
        self.exact_energy_, self.ground_state_ = ground_state(X, projector)
        self.records_ = ordering_scan(X, self._candidates(X), self.time, steps,
                                      self.ground_state_, self.exact_energy_, self.order,
                                      self.energy)
        self.best_ = self.records_[0]
        self.terms_ = evolution_terms(X)
        return self

    def best_terms(self):
        check_is_fitted(self)
        return self.best_.terms(self.terms_)

    def error_curve(self, record=None):
        """``{n: |E(n) - E0|}`` for ``record`` (default: the best one)."""
        check_is_fitted(self)
        return dict((record or self.best_).errors)
