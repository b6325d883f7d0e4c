"""Input checks shared by the estimators and the functional API."""

import numbers

import numpy as np

from ..exceptions import DimensionError, NumericError, ValidationError
from ..fermion import FermionOperator
from ..pauli import PauliOperator

MAX_DENSE_QUBITS = 12


def check_fermion_operator(op, hermitian=False):
    if not isinstance(op, FermionOperator):
        raise TypeError(f"expected FermionOperator, got {type(op).__name__}")
    if hermitian and not op.is_hermitian():
        raise ValidationError("fermionic operator is not Hermitian")
    return op


def check_pauli_operator(op, hermitian=False, max_qubits=None, tol=1e-10):
    if not isinstance(op, PauliOperator):
        raise TypeError(f"expected PauliOperator, got {type(op).__name__}")
    if max_qubits is not None and op.n_qubits > max_qubits:
        raise NumericError(
            f"{op.n_qubits} qubits exceeds the dense cap of {max_qubits}")
    if hermitian and not op.is_hermitian(tol):
        raise ValidationError("Pauli operator is not Hermitian (complex coefficients)")
    return op


def check_square_matrix(mat, name="matrix"):
    mat = np.asarray(mat, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {mat.shape}")
    return mat


def check_hermitian_matrix(mat, name="matrix", atol=1e-10):
    mat = check_square_matrix(mat, name)
    if not np.allclose(mat, mat.conj().T, atol=atol):
        raise ValidationError(f"{name} is not Hermitian")
    return mat


def check_unitary(mat, name="matrix", atol=1e-10):
    mat = check_square_matrix(mat, name)
    err = np.max(np.abs(mat.conj().T @ mat - np.eye(len(mat))))
    if err > atol:
        raise NumericError(f"{name} is not unitary (max deviation {err:.2e})")
    return mat


def check_positive_int(value, name):
    if not isinstance(value, numbers.Integral) or value < 1:
        raise ValidationError(f"{name} must be a positive integer, got {value!r}")
    return int(value)
