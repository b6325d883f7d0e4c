"""Bravyi-Kitaev encoding built on a Fenwick (binary indexed) tree.

Qubit j stores the occupation parity of the modes in its subtree. Every
subtree covers a contiguous block of modes ending at its root, which is what
makes the parity sets below short.
"""

from ..pauli import PauliOperator
from ..utils.validation import check_fermion_operator
from .jordan_wigner import map_terms


class FenwickTree:
    """Fenwick tree over modes ``0..n-1`` (0-based node labels).

    The root is node ``n-1``; each range is split at its midpoint, the
    midpoint node becoming a child of the range's parent.
    """

    def __init__(self, n_modes):
        self.n_modes = n_modes
        self.parent = [None] * n_modes
        self.children = [[] for _ in range(n_modes)]
        if n_modes:
            self._split(0, n_modes - 1, n_modes - 1)
        # each subtree spans modes lowest[j]..j
        self.lowest = list(range(n_modes))
        for j in range(n_modes):
            node = j
            while self.parent[node] is not None:
                node = self.parent[node]
                self.lowest[node] = min(self.lowest[node], self.lowest[j])

    def _split(self, left, right, parent):
        if left >= right:
            return
        pivot = (left + right) // 2
        self.parent[pivot] = parent
        self.children[parent].append(pivot)
        self._split(left, pivot, pivot)
        self._split(pivot + 1, right, parent)

    def update_set(self, j):
        """Ancestors of ``j``: qubits whose stored parity includes mode j."""
        out = []
        node = self.parent[j]
        while node is not None:
            out.append(node)
            node = self.parent[node]
        return out

    def parity_set(self, j):
        """Qubits whose stored parities XOR to the parity of modes ``0..j-1``."""
        out = []
        cur = j - 1
        while cur >= 0:
            out.append(cur)
            cur = self.lowest[cur] - 1
        return out

    def flip_set(self, j):
        """Children of ``j``: together with qubit j they give mode j's occupation."""
        return sorted(self.children[j])

    def remainder_set(self, j):
        flip = set(self.flip_set(j))
        return [k for k in self.parity_set(j) if k not in flip]


def _ladder(tree, n_qubits, mode, dagger):
    j = mode - 1
    xs = {u + 1: "X" for u in tree.update_set(j)}
    c = {**xs, **{p + 1: "Z" for p in tree.parity_set(j)}, mode: "X"}
    d = {**xs, **{r + 1: "Z" for r in tree.remainder_set(j)}, mode: "Y"}
    # a = (c + i d)/2, a^ = (c - i d)/2
    return (PauliOperator.from_sparse(n_qubits, c, 0.5)
            + PauliOperator.from_sparse(n_qubits, d, -0.5j if dagger else 0.5j))


def bravyi_kitaev(op, n_qubits=None, tol=1e-12):
    """Map a :class:`FermionOperator` to a :class:`PauliOperator` on ``n_modes`` qubits."""
    op = check_fermion_operator(op)
    n = op.n_modes if n_qubits is None else n_qubits
    if n < op.n_modes:
        raise ValueError(f"{n} qubits cannot hold {op.n_modes} modes")
    tree = FenwickTree(n)
    return map_terms(op, lambda m, d: _ladder(tree, n, m, d), n, tol)


def bravyi_kitaev_ladder(n_qubits, mode, dagger=True):
    return _ladder(FenwickTree(n_qubits), n_qubits, mode, dagger)
