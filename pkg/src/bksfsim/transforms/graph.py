"""Interaction graphs for the superfast encoding and their cycle bases."""

from collections import deque
from dataclasses import dataclass, field

from ..exceptions import TransformError, UnsupportedGraphError, ValidationError
from ..fermion import Tag, classify_term, match_template, pair_terms
from ..utils.validation import check_fermion_operator


@dataclass(frozen=True)
class ModeGraph:
    """Modes as vertices ``1..n_vertices``, one qubit per edge.

    Edges are stored as ``(i, j)`` with ``i < j`` in lexicographic order;
    edge number ``q`` (1-based) in that order is the edge's qubit. The
    orientation is ``epsilon(i, j) = +1`` for ``i < j`` and ``-1`` otherwise.
    """

    n_vertices: int
    edges: tuple = ()
    qubit_of_edge: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        edges = set()
        for i, j in self.edges:
            if i == j:
                raise ValidationError(f"self-loop on vertex {i}")
            if not (1 <= i <= self.n_vertices and 1 <= j <= self.n_vertices):
                raise ValidationError(f"edge ({i},{j}) outside 1..{self.n_vertices}")
            edges.add((min(i, j), max(i, j)))
        ordered = tuple(sorted(edges))
        object.__setattr__(self, "edges", ordered)
        object.__setattr__(self, "qubit_of_edge",
                           {e: q for q, e in enumerate(ordered, 1)})

    @property
    def n_edges(self):
        return len(self.edges)

    def has_edge(self, i, j):
        return (min(i, j), max(i, j)) in self.qubit_of_edge

    def qubit(self, i, j):
        """1-based qubit of the edge joining ``i`` and ``j`` (either order)."""
        try:
            return self.qubit_of_edge[min(i, j), max(i, j)]
        except KeyError:
            raise KeyError(f"({i},{j}) is not an edge") from None

    def epsilon(self, i, j):
        if not self.has_edge(i, j):
            return 0
        return 1 if i < j else -1

    def neighbors(self, v):
        out = [j for i, j in self.edges if i == v] + [i for i, j in self.edges if j == v]
        return sorted(out)

    def degree(self, v):
        return len(self.neighbors(v))

    def is_connected(self):
        if self.n_vertices <= 1:
            return True
        seen = {1}
        todo = [1]
        while todo:
            v = todo.pop()
            for w in self.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == self.n_vertices

    def to_text(self):
        return "\n".join(f"edge {i} {j} qubit {self.qubit_of_edge[i, j]}"
                         for i, j in self.edges)


def template_edges(match):
    """Edges an edge-operator template touches, as unordered vertex pairs."""
    idx = match.indices
    if match.tag in (Tag.EXCITATION, Tag.PAIR_CREATION):
        return [(idx[0], idx[1])]
    if match.tag is Tag.NUMBER_EXCITATION:
        return [(idx[0], idx[2])]
    if match.tag is Tag.DOUBLE_EXCITATION:
        return [(idx[0], idx[1]), (idx[2], idx[3])]
    return []


def build_mode_graph(op):
    """Interaction graph of a Hermitian fermionic operator.

    Number and Coulomb/exchange terms add no edges.
    """
    op = check_fermion_operator(op)
    edges = []
    for term, partner in pair_terms(op):
        cls = classify_term(term, partner)
        if cls.tag is Tag.UNSUPPORTED:
            why = " (odd number of ladder operators)" if cls.odd_parity else ""
            raise TransformError(f"unsupported term {term}{why}")
        edges.extend(template_edges(match_template(term)))
    return ModeGraph(op.n_modes, tuple(edges))


@dataclass(frozen=True)
class Loop:
    """Closed vertex cycle ``v0 -> v1 -> ... -> v0`` and its edge qubits."""

    vertices: tuple
    edge_qubits: tuple = ()

    def __len__(self):
        return len(self.vertices)

    def steps(self):
        v = self.vertices
        return [(v[k], v[(k + 1) % len(v)]) for k in range(len(v))]


def make_loop(g, vertices):
    vertices = tuple(vertices)
    if len(vertices) < 3 or len(set(vertices)) != len(vertices):
        raise ValidationError(f"{vertices} is not a simple cycle of length >= 3")
    loop = Loop(vertices)
    for a, b in loop.steps():
        if not g.has_edge(a, b):
            raise ValidationError(f"loop step ({a},{b}) is not an edge")
    return Loop(vertices, tuple(g.qubit(a, b) for a, b in loop.steps()))


def _orient(cycle):
    # start at the smallest vertex, then head for its smaller loop neighbour
    k = cycle.index(min(cycle))
    rot = cycle[k:] + cycle[:k]
    if rot[-1] < rot[1]:
        rot = [rot[0]] + rot[1:][::-1]
    return rot


def spanning_tree(g):
    """Breadth-first tree from vertex 1, visiting neighbours in ascending order."""
    parent = {1: None}
    depth = {1: 0}
    queue = deque([1])
    tree = set()
    while queue:
        v = queue.popleft()
        for w in g.neighbors(v):
            if w not in parent:
                parent[w] = v
                depth[w] = depth[v] + 1
                tree.add((min(v, w), max(v, w)))
                queue.append(w)
    return parent, depth, tree


def cycle_basis(g):
    """Fundamental cycles of the deterministic spanning tree, one per non-tree edge.

    Returns exactly ``E - M + 1`` loops for a connected graph.
    """
    if g.n_vertices == 0:
        return []
    if not g.is_connected():
        raise UnsupportedGraphError("interaction graph is disconnected")
    parent, depth, tree = spanning_tree(g)
    loops = []
    for u, v in g.edges:
        if (u, v) in tree:
            continue
        left, right = [u], [v]
        a, b = u, v
        while a != b:
            if depth[a] >= depth[b]:
                a = parent[a]
                left.append(a)
            else:
                b = parent[b]
                right.append(b)
        # left ends at the common ancestor; right ends there too
        cycle = left + right[-2::-1]
        loops.append(make_loop(g, _orient(cycle)))
    return loops
