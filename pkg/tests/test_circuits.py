from collections import Counter

import numpy as np
import pytest

from bksfsim.circuits import (Circuit, Gate, OrderingSearch, compile_pauli_rotation,
                              compile_trotter_step, evolution_terms, gate_count,
                              magnitude_ordering, magnitude_record, random_orderings,
                              term_gate_count)
from bksfsim.exceptions import ValidationError
from bksfsim.pauli import PauliOperator, PauliString, PauliTerm
from bksfsim.simulator import TrotterPlan, pauli_exponential, trotter_evolution


def _equal_up_to_phase(a, b, atol=1e-10):
    k = np.argmax(np.abs(b))
    phase = a.flat[k] / b.flat[k]
    return abs(abs(phase) - 1) < atol and np.allclose(a, phase * b, atol=atol)


def test_zzz_rotation_is_five_gates():
    circ = compile_pauli_rotation(PauliTerm(0.3, PauliString.from_label("ZZZ")))
    assert len(circ) == 5
    assert circ.counts() == Counter({"CNOT": 4, "RZ": 1, "H": 0, "RX": 0})
    assert [g.kind for g in circ.gates] == ["CNOT", "CNOT", "RZ", "CNOT", "CNOT"]


def test_xyz_rotation_is_nine_gates():
    circ = compile_pauli_rotation(PauliTerm(0.3, PauliString.from_label("XYZ")))
    assert len(circ) == 9
    assert circ.counts() == Counter({"CNOT": 4, "RZ": 1, "H": 2, "RX": 2})
    assert term_gate_count(PauliString.from_label("XYZ")) == 9


def test_identity_costs_nothing():
    assert len(compile_pauli_rotation(PauliTerm(1.0, PauliString("III")))) == 0
    assert term_gate_count(PauliString("III")) == 0


@pytest.mark.parametrize("name", ["jw", "bk", "bksf"])
def test_compiler_soundness_on_every_h2_term(h2_qubit, name):
    for term in evolution_terms(h2_qubit[name]):
        circ = compile_pauli_rotation(term, scale=0.8)
        target = pauli_exponential(term.coefficient, term.string, 0.8)
        assert _equal_up_to_phase(circ.to_matrix(), target)


@pytest.mark.parametrize("name,total", [("jw", 82), ("bk", 74), ("bksf", 79)])
def test_counts_agree_with_compiled_circuit(h2_qubit, name, total):
    op = h2_qubit[name]
    count, kinds = gate_count(op)
    circ = compile_trotter_step(evolution_terms(op), 1.0, op.n_qubits)
    assert count == total == len(circ)
    assert circ.counts() == kinds
    # three first-order steps
    assert 3 * count == {"jw": 246, "bk": 222, "bksf": 237}[name]


def test_full_step_matches_first_order_unitary(h2_qubit):
    op = h2_qubit["bk"]
    terms = magnitude_ordering(op)
    circ = compile_trotter_step(terms, 0.5, op.n_qubits)
    u = trotter_evolution(TrotterPlan(terms, order=1, steps=1, time=0.5))
    assert _equal_up_to_phase(circ.to_matrix(), u)


def test_circuit_text_round_trip():
    circ = compile_pauli_rotation(PauliTerm(-0.25, PauliString.from_label("YZX")))
    again = Circuit.from_text(circ.to_text())
    assert again.gates == circ.gates
    assert np.allclose(again.to_matrix(), circ.to_matrix())


def test_gate_validation():
    with pytest.raises(ValidationError):
        Gate("CNOT", (1, 1))
    with pytest.raises(ValidationError):
        Gate("RX", (1,), 0.3)
    with pytest.raises(ValidationError):
        Circuit(2, [Gate("H", (3,))])
    with pytest.raises(ValidationError):
        compile_pauli_rotation(PauliTerm(1j, PauliString("X")))


def test_magnitude_ordering_interleaves(h2_qubit):
    terms = magnitude_ordering(h2_qubit["jw"])
    assert len(terms) == 14
    kinds = ["z" if t.string.is_z_only() else "xy" for t in terms]
    # four X/Y terms slot in after the first four Z terms, the rest trail
    assert kinds == ["z", "xy"] * 4 + ["z"] * 6
    z = [abs(t.coefficient) for t in terms if t.string.is_z_only()]
    assert z == sorted(z)


def test_random_orderings_are_deterministic(h2_qubit):
    a = random_orderings(h2_qubit["jw"], 5, seed=7)
    b = random_orderings(h2_qubit["jw"], 5, seed=7)
    c = random_orderings(h2_qubit["jw"], 5, seed=8)
    assert [r.permutation for r in a] == [r.permutation for r in b]
    assert [r.permutation for r in a] != [r.permutation for r in c]
    assert a[3].ordering_id == "random-0003"
    assert sorted(a[0].permutation) == list(range(14))


def test_random_first_position_is_roughly_uniform(h2_qubit):
    recs = random_orderings(h2_qubit["jw"], 1000, seed=42)
    firsts = Counter(r.permutation[0] for r in recs)
    assert len(firsts) == 14
    assert all(40 <= v <= 120 for v in firsts.values())


def test_ordering_search_small(h2_qubit):
    search = OrderingSearch(steps=(1, 2), n_random=5, seed=3).fit(h2_qubit["jw"])
    assert len(search.records_) == 6
    errs = [r.single_step_error for r in search.records_]
    assert errs == sorted(errs)
    assert set(search.error_curve()) == {1, 2}
    assert search.get_params()["n_random"] == 5
    assert magnitude_record(h2_qubit["jw"]).ordering_id in {r.ordering_id for r in search.records_}
