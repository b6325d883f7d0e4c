import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from bksfsim.fermion import FermionOperator, FermionTerm, ann, cre
from bksfsim.pauli import PauliOperator
from bksfsim.simulator import spectrum, to_dense_matrix
from bksfsim.transforms import (FenwickTree, bksf_transform, bravyi_kitaev,
                                build_mode_graph, code_space_projector, jordan_wigner,
                                stabilizers)
from bksfsim.transforms.bravyi_kitaev import bravyi_kitaev_ladder
from bksfsim.transforms.jordan_wigner import jordan_wigner_ladder

from conftest import dense_annihilator, dense_fermion, even_parity_projector

# Update, parity and flip sets for eight modes, as tabulated in the
# Bravyi-Kitaev literature (0-based qubits).
BK8_UPDATE = [{1, 3, 7}, {3, 7}, {3, 7}, {7}, {5, 7}, {7}, {7}, set()]
BK8_PARITY = [set(), {0}, {1}, {1, 2}, {3}, {3, 4}, {3, 5}, {3, 5, 6}]
BK8_FLIP = [set(), {0}, set(), {1, 2}, set(), {4}, set(), {3, 5, 6}]


@pytest.mark.parametrize("j", range(8))
def test_fenwick_sets_match_reference_table(j):
    tree = FenwickTree(8)
    assert set(tree.update_set(j)) == BK8_UPDATE[j]
    assert set(tree.parity_set(j)) == BK8_PARITY[j]
    assert set(tree.flip_set(j)) == BK8_FLIP[j]
    assert set(tree.remainder_set(j)) == BK8_PARITY[j] - BK8_FLIP[j]


def test_jordan_wigner_ladder_example():
    # a_2^ on three qubits: (X - iY)/2 on qubit 2, Z on qubit 1
    expected = (PauliOperator.from_label("IXZ", 0.5)
                + PauliOperator.from_label("IYZ", -0.5j))
    assert jordan_wigner_ladder(3, 2, dagger=True) == expected


def test_jordan_wigner_number_operator():
    op = FermionOperator(2, [FermionTerm(1.0, (cre(2), ann(2)))])
    assert jordan_wigner(op) == (PauliOperator.identity(2, 0.5)
                                 + PauliOperator.from_label("ZI", -0.5))


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
@pytest.mark.parametrize("ladder", [jordan_wigner_ladder, bravyi_kitaev_ladder])
def test_canonical_anticommutation(n, ladder):
    a = [to_dense_matrix(ladder(n, j, dagger=False)) for j in range(1, n + 1)]
    eye = np.eye(2 ** n)
    for i in range(n):
        for j in range(n):
            assert np.allclose(a[i] @ a[j] + a[j] @ a[i], 0)
            expected = eye if i == j else 0
            assert np.allclose(a[i] @ a[j].conj().T + a[j].conj().T @ a[i], expected)


@pytest.mark.parametrize("n", [2, 4, 5])
def test_jordan_wigner_matches_direct_kron_oracle(n):
    for j in range(1, n + 1):
        assert np.allclose(to_dense_matrix(jordan_wigner_ladder(n, j, dagger=False)),
                           dense_annihilator(j, n))


def test_h2_jw_against_oracle(h2_fermion, h2_qubit):
    assert np.allclose(to_dense_matrix(h2_qubit["jw"]), dense_fermion(h2_fermion))


@st.composite
def even_operators(draw, max_modes=5, connected=False, force_double=False):
    """Random Hermitian operators built from the supported term shapes."""
    n = draw(st.integers(4 if force_double else 2, max_modes))
    coeff = st.floats(-1, 1, allow_nan=False).filter(lambda x: abs(x) > 1e-3)
    modes = st.integers(1, n)
    terms = []
    if connected:
        for i in range(1, n):
            t = FermionTerm(draw(coeff), (cre(i), ann(i + 1)))
            terms += [t, t.adjoint()]
    if force_double:
        i, j, k, l = draw(st.permutations(range(1, n + 1)))[:4]
        t = FermionTerm(draw(coeff), (cre(i), cre(j), ann(k), ann(l)))
        terms += [t, t.adjoint()]
    for _ in range(draw(st.integers(1, 6))):
        kind = draw(st.sampled_from(["number", "coulomb", "hop", "double", "pair"]))
        picked = draw(st.lists(modes, min_size=4, max_size=4, unique=True)
                      if n >= 4 else st.lists(modes, min_size=n, max_size=n, unique=True))
        c = draw(coeff)
        if kind == "number":
            terms.append(FermionTerm(c, (cre(picked[0]), ann(picked[0]))))
            continue
        i, j = picked[:2]
        if kind == "coulomb":
            terms.append(FermionTerm(c, (cre(i), cre(j), ann(j), ann(i))))
            continue
        if kind == "hop":
            t = FermionTerm(c, (cre(i), ann(j)))
        elif kind == "pair":
            t = FermionTerm(c, (cre(i), cre(j)))
        elif n >= 4:
            k, l = picked[2:]
            t = FermionTerm(c, (cre(i), cre(j), ann(k), ann(l)))
        else:
            continue
        terms += [t, t.adjoint()]
    return FermionOperator(n, terms)


@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(even_operators())
def test_jw_and_bk_spectra_agree(op):
    jw = jordan_wigner(op, op.n_modes)
    bk = bravyi_kitaev(op, op.n_modes)
    assert np.allclose(to_dense_matrix(jw), dense_fermion(op), atol=1e-10)
    assert np.allclose(spectrum(jw), spectrum(bk), atol=1e-10)


@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.one_of(even_operators(connected=True),
                 even_operators(connected=True, force_double=True)))
def test_bksf_code_space_spectrum_matches_even_sector(op):
    qubit = bksf_transform(op)
    g = build_mode_graph(op)
    if g.n_edges > 10:
        return
    proj = code_space_projector(stabilizers(g), g.n_edges)
    jw_even = spectrum(dense_fermion(op), even_parity_projector(op.n_modes))
    assert np.allclose(spectrum(qubit, proj), jw_even, atol=1e-9)


def test_h2_spectral_equivalence(h2_qubit, h2_mappers):
    e_jw = spectrum(h2_qubit["jw"])
    e_bk = spectrum(h2_qubit["bk"])
    e_bksf = spectrum(h2_qubit["bksf"], h2_mappers["bksf"].projector_)
    assert np.allclose(e_jw, e_bk, atol=1e-10)
    assert len(e_bksf) == 8
    assert np.allclose(e_bksf, spectrum(h2_qubit["jw"], even_parity_projector(4)),
                       atol=1e-10)
