import sys
from functools import reduce

import numpy as np
import pytest

from bksfsim import build_molecular_hamiltonian, get_mapper, load_h2

I2 = np.eye(2, dtype=complex)
Z2 = np.diag([1.0, -1.0]).astype(complex)
LOWER = np.array([[0, 1], [0, 0]], dtype=complex)  # |0><1| empties an occupied mode


def dense_annihilator(j, n):
    """JW annihilator for 1-based mode j, built directly from numpy kron products.

    Little-endian: qubit 1 is the rightmost factor.
    """
    factors = []
    for q in range(n, 0, -1):
        factors.append(LOWER if q == j else (Z2 if q < j else I2))
    return reduce(np.kron, factors)


def dense_fermion(op):
    """Dense matrix of a FermionOperator using the direct JW ladder matrices."""
    n = op.n_modes
    dim = 2 ** n
    a = {j: dense_annihilator(j, n) for j in range(1, n + 1)}
    out = np.zeros((dim, dim), dtype=complex)
    for term in op.terms:
        mat = np.eye(dim, dtype=complex)
        for f in term.factors:
            mat = mat @ (a[f.mode].conj().T if f.dagger else a[f.mode])
        out += term.coefficient * mat
    return out


def even_parity_projector(n):
    diag = [1.0 if bin(b).count("1") % 2 == 0 else 0.0 for b in range(2 ** n)]
    return np.diag(diag).astype(complex)


@pytest.fixture(scope="session")
def h2_table():
    return load_h2()


@pytest.fixture(scope="session")
def h2_fermion(h2_table):
    return build_molecular_hamiltonian(h2_table)


@pytest.fixture(scope="session")
def h2_mappers(h2_fermion):
    return {name: get_mapper(name).fit(h2_fermion) for name in ("jw", "bk", "bksf")}


@pytest.fixture(scope="session")
def h2_qubit(h2_fermion, h2_mappers):
    return {name: m.transform(h2_fermion) for name, m in h2_mappers.items()}


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])
