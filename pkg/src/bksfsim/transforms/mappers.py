"""Estimator-style wrappers so the mappings compose with scikit-learn tooling.

``fit`` inspects a fermionic operator (mode count, and for the superfast
encoding the interaction graph, stabilizers and vacuum); ``transform`` maps
operators onto qubits using what was fitted.
"""

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ..exceptions import TransformError, ValidationError
from ..fermion import match_template, pair_terms
from ..simulator import to_dense_matrix
from ..utils.validation import MAX_DENSE_QUBITS, check_fermion_operator
from .bksf import (bksf_transform, code_space_projector, edge_operators,
                   number_operator, stabilizers, vacuum_state)
from .bravyi_kitaev import bravyi_kitaev
from .graph import build_mode_graph, template_edges
from .jordan_wigner import jordan_wigner


class _QubitMapper(TransformerMixin, BaseEstimator):
    def fit(self, X, y=None):
        X = check_fermion_operator(X)
        self.n_modes_ = X.n_modes
        self.n_qubits_ = X.n_modes
        self.projector_ = None
        return self

    def _check(self, X):
        check_is_fitted(self)
        X = check_fermion_operator(X)
        if X.n_modes > self.n_modes_:
            raise ValidationError(
                f"operator has {X.n_modes} modes, mapper was fitted on {self.n_modes_}")
        return X


class JordanWignerMapper(_QubitMapper):
    """Jordan-Wigner mapping, one qubit per mode.

    Parameters
    ----------
    tol : float
        Coefficients at or below this magnitude are dropped.
    """

    def __init__(self, tol=1e-12):
        self.tol = tol

    def transform(self, X):
        X = self._check(X)
        return jordan_wigner(X, self.n_qubits_, self.tol)


class BravyiKitaevMapper(_QubitMapper):
    """Fenwick-tree Bravyi-Kitaev mapping, one qubit per mode."""

    def __init__(self, tol=1e-12):
        self.tol = tol

    def transform(self, X):
        X = self._check(X)
        return bravyi_kitaev(X, self.n_qubits_, self.tol)


class BKSFMapper(_QubitMapper):
    """Superfast mapping, one qubit per interaction-graph edge.

    Parameters
    ----------
    tol : float
        Drop tolerance for Pauli coefficients.
    dense : bool
        Build the dense code-space projector and vacuum during ``fit``
        (skipped automatically above the dense qubit cap).
    double_excitation : {"auto", "compact", "exact"}
        Double-excitation template; see :func:`bksf_transform`.

    Attributes
    ----------
    graph_ : ModeGraph
    edge_operators_ : EdgeOperators
    stabilizers_ : StabilizerSet
    projector_ : ndarray or None
    vacuum_ : ndarray or None
    """

    def __init__(self, tol=1e-12, dense=True, double_excitation="auto"):
        self.tol = tol
        self.dense = dense
        self.double_excitation = double_excitation

    def fit(self, X, y=None):
        X = check_fermion_operator(X)
        self.n_modes_ = X.n_modes
        self.graph_ = build_mode_graph(X)
        self.n_qubits_ = self.graph_.n_edges
        self.edge_operators_ = edge_operators(self.graph_)
        self.stabilizers_ = stabilizers(self.graph_)
        self.projector_ = None
        self.vacuum_ = None
        if self.dense and self.n_qubits_ <= MAX_DENSE_QUBITS:
            self.projector_ = code_space_projector(self.stabilizers_, self.n_qubits_)
            self.vacuum_ = vacuum_state(self.graph_, self.stabilizers_)
        return self

    def transform(self, X):
        X = self._check(X)
        for term, _ in pair_terms(X):
            match = match_template(term)
            for i, j in template_edges(match) if match else []:
                if not self.graph_.has_edge(i, j):
                    raise TransformError(
                        f"term {term} needs edge ({i},{j}) absent from the fitted graph")
        return bksf_transform(X, self.graph_, self.tol, self.double_excitation)

    def number_operators(self):
        check_is_fitted(self)
        return {v: number_operator(self.graph_, v, self.edge_operators_)
                for v in range(1, self.graph_.n_vertices + 1)}

    def stabilizer_matrices(self):
        check_is_fitted(self)
        return [to_dense_matrix(c) for c in self.stabilizers_.operators]


MAPPERS = {"jw": JordanWignerMapper, "bk": BravyiKitaevMapper, "bksf": BKSFMapper}


def get_mapper(name, **params):
    try:
        return MAPPERS[name](**params)
    except KeyError:
        raise ValidationError(
            f"unknown transform {name!r}; choose from {sorted(MAPPERS)}") from None
