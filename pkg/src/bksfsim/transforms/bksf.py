"""Bravyi-Kitaev superfast encoding: one qubit per interaction-graph edge.

Vertex operators ``B_i`` and edge operators ``A_ij`` generate the even
fermionic algebra. Every supported Hamiltonian term is rewritten as a
polynomial in them and then lowered to Pauli strings. Loop stabilizers cut
the edge-qubit space down to the physical code space.
"""

from dataclasses import dataclass

import numpy as np

from ..exceptions import (DegenerateSeedError, NumericError, TransformError,
                          UnsupportedGraphError, ValidationError)
from ..fermion import Tag, classify_term, match_template, pair_terms
from ..pauli import PauliOperator, PauliString, commutes, multiply_strings
from ..simulator import to_dense_matrix
from ..utils.validation import check_fermion_operator
from .graph import ModeGraph, build_mode_graph, cycle_basis, make_loop


@dataclass(frozen=True)
class EdgeOperators:
    """Pauli images of ``B_i`` (keyed by vertex) and ``A_ij`` (both orientations)."""

    graph: ModeGraph
    B: dict
    A: dict

    def b(self, i):
        return self.B[i]

    def a(self, i, j):
        try:
            return self.A[i, j]
        except KeyError:
            raise KeyError(f"({i},{j}) is not an edge of the interaction graph") from None


def edge_operators(g):
    """Build ``B_i`` and ``A_ij`` on the ``E`` edge qubits of ``g``.

    ``B_i`` is Z on every edge at ``i``. For ``i < j``, ``A_ij`` is X on edge
    ``(i,j)`` times Z on edges ``(l,i)`` with neighbour ``l < j`` and Z on
    edges ``(s,j)`` with neighbour ``s < i``; ``A_ji = -A_ij``.
    """
    if not g.is_connected():
        raise UnsupportedGraphError("interaction graph is disconnected")
    n = g.n_edges
    B = {v: PauliOperator.from_sparse(n, {g.qubit(v, w): "Z" for w in g.neighbors(v)})
         for v in range(1, g.n_vertices + 1)}
    A = {}
    for i, j in g.edges:
        ops = {g.qubit(l, i): "Z" for l in g.neighbors(i) if l < j}
        ops.update({g.qubit(s, j): "Z" for s in g.neighbors(j) if s < i})
        ops[g.qubit(i, j)] = "X"
        A[i, j] = PauliOperator.from_sparse(n, ops, g.epsilon(i, j))
        A[j, i] = PauliOperator.from_sparse(n, ops, g.epsilon(j, i))
    return EdgeOperators(g, B, A)


def _template(ops, match, n):
    """Edge-operator polynomial of a template (Hermitian pairs summed)."""
    one = PauliOperator.identity(n)
    B = ops.b
    idx = match.indices
    if match.tag is Tag.CONSTANT:
        return one
    if match.tag is Tag.NUMBER:
        (i,) = idx
        return (one - B(i)) * 0.5
    if match.tag is Tag.COULOMB_EXCHANGE:
        i, j = idx
        return (one - B(i)) * (one - B(j)) * 0.25
    if match.tag is Tag.EXCITATION:
        i, j = idx
        A = ops.a(i, j)
        return (A * B(j) + B(i) * A) * -0.5j
    if match.tag is Tag.NUMBER_EXCITATION:
        i, j, k = idx
        A = ops.a(i, k)
        return (A * B(k) + B(i) * A) * -0.5j * (one - B(j)) * 0.5
    if match.tag is Tag.DOUBLE_EXCITATION:
        i, j, k, l = idx
        # compact form; see _double_correction for the exact one
        poly = (-one - B(i) * B(j) + B(i) * B(k) + B(i) * B(l) + B(j) * B(k)
                + B(j) * B(l) - B(k) * B(l) + B(i) * B(j) * B(k) * B(l))
        return ops.a(i, j) * ops.a(k, l) * poly * 0.125
    if match.tag is Tag.PAIR_CREATION:
        # a_i^ a_j^ + a_j a_i (a Hermitian pair)
        i, j = idx
        A = ops.a(i, j)
        return (A * B(j) - B(i) * A) * 0.5j
    raise TransformError(f"no template for {match.tag}")


def _double_correction(ops, match):
    """Exact minus compact double-excitation template: ``-A_ij A_kl B_i B_j B_k B_l / 4``.

    Checked against the Majorana representation of the even algebra.
    """
    i, j, k, l = match.indices
    B = ops.b
    return ops.a(i, j) * ops.a(k, l) * B(i) * B(j) * B(k) * B(l) * -0.25


DOUBLE_EXCITATION_MODES = ("auto", "compact", "exact")


def bksf_transform(op, graph=None, tol=1e-12, double_excitation="auto"):
    """Map a Hermitian, even-parity :class:`FermionOperator` to edge qubits.

    ``graph`` defaults to :func:`build_mode_graph` of ``op``; a larger graph
    containing every needed edge is also accepted.

    ``double_excitation`` picks the double-excitation template. ``"compact"``
    uses the common form ending in ``+B_i B_j B_k B_l``, which is off by
    ``-A_ij A_kl B_i B_j B_k B_l / 4`` per Hermitian pair; ``"exact"`` adds
    that term back. ``"auto"`` keeps the compact form only when the summed
    corrections vanish on the code space (as they do for H2), so the result
    is exact there either way.
    """
    if double_excitation not in DOUBLE_EXCITATION_MODES:
        raise ValidationError(
            f"double_excitation must be one of {DOUBLE_EXCITATION_MODES}")
    op = check_fermion_operator(op)
    g = build_mode_graph(op) if graph is None else graph
    ops = edge_operators(g)
    n = g.n_edges
    out = PauliOperator(n)
    correction = PauliOperator(n)
    for term, partner in pair_terms(op):
        cls = classify_term(term, partner)
        if cls.tag is Tag.UNSUPPORTED:
            why = ("; only even products of ladder operators are representable"
                   if cls.odd_parity else "")
            raise TransformError(f"unsupported term {term}{why}")
        coeff = term.coefficient
        if isinstance(coeff, complex):
            if abs(coeff.imag) > tol:
                raise TransformError(f"term {term} has a complex coefficient")
            coeff = coeff.real
        match = match_template(term)
        weight = coeff * match.sign
        try:
            out = out + _template(ops, match, n) * weight
            if match.tag is Tag.DOUBLE_EXCITATION:
                correction = correction + _double_correction(ops, match) * weight
        except KeyError as exc:
            raise TransformError(f"term {term}: {exc.args[0]}") from None
    correction = correction.canonicalize(tol)
    if len(correction) and double_excitation != "compact":
        keep_compact = False
        if double_excitation == "auto":
            try:
                keep_compact = vanishes_on_code_space(correction, stabilizers(g), tol)
            except NumericError:
                pass
        if not keep_compact:
            out = out + correction
    return out.canonicalize(tol)


# --------------------------------------------------------------------------
# stabilizers and vacuum

def loop_stabilizer(g, loop, ops=None):
    """``i**p A_{v0 v1} A_{v1 v2} ... A_{v(p-1) v0}`` as a single Pauli term."""
    if ops is None:
        ops = edge_operators(g)
    loop = make_loop(g, loop.vertices if hasattr(loop, "vertices") else loop)
    out = PauliOperator.identity(g.n_edges, 1j ** len(loop))
    for a, b in loop.steps():
        out = out * ops.a(a, b)
    out = out.canonicalize()
    (term,) = out.terms()
    if abs(abs(term.coefficient) - 1) > 1e-12 or abs(complex(term.coefficient).imag) > 1e-12:
        raise ValidationError(f"loop stabilizer has coefficient {term.coefficient}")
    return out.real()


@dataclass(frozen=True)
class StabilizerSet:
    loops: tuple
    operators: tuple

    def __len__(self):
        return len(self.loops)

    def to_text(self):
        return "\n".join(op.to_text(digits=1) for op in self.operators)


def stabilizers(g):
    """One stabilizer per fundamental cycle of ``g``."""
    ops = edge_operators(g)
    loops = tuple(cycle_basis(g))
    return StabilizerSet(loops, tuple(loop_stabilizer(g, lp, ops) for lp in loops))


def _stabilizer_group(stabs, n_qubits):
    """Every product of the loop stabilizers, as ``{string: phase}``."""
    group = {PauliString.identity(n_qubits): 1.0}
    for c in stabs.operators:
        (gen,) = c.terms()
        for s, phase in list(group.items()):
            f, prod = multiply_strings(s, gen.string)
            group[prod] = phase * f * gen.coefficient
    return group


def vanishes_on_code_space(op, stabs, tol=1e-12, max_loops=16):
    """True iff ``op`` restricted to the stabilizer code space is zero.

    Strings differing by a stabilizer act identically on the code space, so
    coefficients are summed per coset. A string anticommuting with some
    stabilizer leaves the code space and is treated as nonzero.
    """
    if len(stabs) > max_loops:
        raise NumericError(f"{len(stabs)} loops is too many to enumerate the group")
    gens = [c.terms()[0].string for c in stabs.operators]
    group = _stabilizer_group(stabs, op.n_qubits)
    cosets = {}
    for s, c in op.items():
        if not all(commutes(s, g) for g in gens):
            return False
        # coset representative: lexicographically smallest member
        (f, rep), phase = min(((multiply_strings(s, g), p) for g, p in group.items()),
                              key=lambda x: x[0][1].letters)
        cosets[rep] = cosets.get(rep, 0) + c * f * phase
    return all(abs(v) <= tol for v in cosets.values())


def code_space_projector(stabs, n_qubits):
    """Dense projector ``prod (1 + C_L)/2`` onto the joint +1 eigenspace."""
    dim = 2 ** n_qubits
    proj = np.eye(dim, dtype=complex)
    for c in stabs.operators:
        proj = proj @ (np.eye(dim) + to_dense_matrix(c)) / 2
    return proj


def vacuum_state(g, stabs=None, seed_index=0, tol=1e-10):
    """Normalized projection of a computational basis state onto the code space.

    ``seed_index`` is the little-endian basis label of the seed; 0 is the
    all-zeros state. Raises :class:`DegenerateSeedError` when the projection
    vanishes.
    """
    if stabs is None:
        stabs = stabilizers(g)
    n = g.n_edges
    vec = np.zeros(2 ** n, dtype=complex)
    vec[seed_index] = 1.0
    for c in stabs.operators:
        vec = vec + to_dense_matrix(c) @ vec
    norm = np.linalg.norm(vec)
    if norm < tol:
        raise DegenerateSeedError(
            f"code-space projection of basis state {seed_index} vanishes")
    return vec / norm


def number_operator(g, mode, ops=None):
    """Pauli image of ``a_i^ a_i`` on the edge qubits."""
    if ops is None:
        ops = edge_operators(g)
    return (PauliOperator.identity(g.n_edges) - ops.b(mode)) * 0.5
