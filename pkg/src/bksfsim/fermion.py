"""Second-quantized operators, molecular integral files and term classification.

Modes are numbered from 1 everywhere in the public API, in integral files and
in printed output. Code that needs array offsets subtracts 1 at the point of
use (``mode - 1``); nothing stores 0-based mode numbers.
"""

import enum
import io
import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType

from .exceptions import IntegralParseError, ValidationError

MOLINT_VERSION = "1"


@dataclass(frozen=True, order=True)
class LadderOp:
    """Creation (``dagger=True``) or annihilation operator on a 1-based mode."""

    mode: int
    dagger: bool

    def adjoint(self):
        return LadderOp(self.mode, not self.dagger)

    def __str__(self):
        return f"a{self.mode}^" if self.dagger else f"a{self.mode}"


def cre(mode):
    return LadderOp(mode, True)


def ann(mode):
    return LadderOp(mode, False)


@dataclass(frozen=True)
class FermionTerm:
    """Coefficient times an ordered product of ladder operators.

    An empty ``factors`` tuple is a constant term.
    """

    coefficient: float
    factors: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))

    def adjoint(self):
        return FermionTerm(_conj(self.coefficient),
                           tuple(f.adjoint() for f in reversed(self.factors)))

    @property
    def modes(self):
        return [f.mode for f in self.factors]

    def is_normal_ordered(self):
        daggers = [f.dagger for f in self.factors]
        return daggers == sorted(daggers, reverse=True)

    def __str__(self):
        ops = " ".join(str(f) for f in self.factors)
        return f"{self.coefficient!r} {ops}".rstrip()


def _conj(c):
    return c.conjugate() if isinstance(c, complex) else c


def block_sorted(factors):
    """Sign and canonical representative of a normal-ordered product.

    Within the creation block and within the annihilation block the operators
    anticommute exactly, so the product equals ``sign`` times the same product
    with each block sorted by descending mode. Returns ``(0, factors)`` when a
    block repeats a mode (the product vanishes) and ``(1, factors)`` unchanged
    for products that are not normal ordered.
    """
    factors = tuple(factors)
    daggers = [f.dagger for f in factors]
    if daggers != sorted(daggers, reverse=True):
        return 1, factors
    n_cre = sum(daggers)
    sign = 1
    blocks = []
    for block in (factors[:n_cre], factors[n_cre:]):
        modes = [f.mode for f in block]
        if len(set(modes)) != len(modes):
            return 0, factors
        sign *= _permutation_sign(modes, sorted(modes, reverse=True))
        blocks.append(sorted(block, key=lambda f: -f.mode))
    return sign, tuple(blocks[0] + blocks[1])


def _permutation_sign(seq, target):
    pos = [target.index(x) for x in seq]
    sign = 1
    for a in range(len(pos)):
        for b in range(a + 1, len(pos)):
            if pos[a] > pos[b]:
                sign = -sign
    return sign


class FermionOperator:
    """Sum of :class:`FermionTerm` on ``n_modes`` modes.

    Terms that are equal up to reordering inside their creation or
    annihilation block are merged into the first-seen factor order, with the
    permutation sign folded into the coefficient. Terms whose coefficient
    cancels to exactly zero are removed. Otherwise the written order is kept.
    """

    __slots__ = ("n_modes", "_terms")

    def __init__(self, n_modes, terms=()):
        self.n_modes = int(n_modes)
        merged = {}
        order = []
        first = {}
        for term in terms:
            if not isinstance(term, FermionTerm):
                term = FermionTerm(*term)
            for f in term.factors:
                if not 1 <= f.mode <= self.n_modes:
                    raise ValidationError(
                        f"mode {f.mode} outside 1..{self.n_modes} in term {term}")
            sign, key = block_sorted(term.factors)
            if sign == 0:
                continue
            if key not in first:
                first[key] = (sign, term.factors)
                order.append(key)
                merged[key] = 0
            rep_sign = first[key][0]
            merged[key] += term.coefficient * sign * rep_sign
        self._terms = tuple(FermionTerm(merged[k], first[k][1])
                            for k in order if merged[k] != 0)

    @property
    def terms(self):
        return self._terms

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def __add__(self, other):
        if not isinstance(other, FermionOperator):
            return NotImplemented
        return FermionOperator(max(self.n_modes, other.n_modes),
                               self._terms + other._terms)

    def __mul__(self, scalar):
        return FermionOperator(self.n_modes,
                               [FermionTerm(t.coefficient * scalar, t.factors)
                                for t in self._terms])

    __rmul__ = __mul__

    def adjoint(self):
        return FermionOperator(self.n_modes, [t.adjoint() for t in self._terms])

    def is_hermitian(self, tol=1e-12):
        mine = self._canonical_map()
        theirs = self.adjoint()._canonical_map()
        keys = set(mine) | set(theirs)
        return all(abs(mine.get(k, 0) - theirs.get(k, 0)) <= tol for k in keys)

    def _canonical_map(self):
        out = {}
        for t in self._terms:
            sign, key = block_sorted(t.factors)
            out[key] = out.get(key, 0) + sign * t.coefficient
        return out

    def constant(self):
        return sum(t.coefficient for t in self._terms if not t.factors)

    def __str__(self):
        return "\n".join(str(t) for t in self._terms) or "0"

    def __repr__(self):
        return f"FermionOperator(n_modes={self.n_modes}, terms={len(self)})"


# --------------------------------------------------------------------------
# integral tables

@dataclass(frozen=True)
class IntegralTable:
    """One- and two-electron integrals keyed by 1-based index tuples (Hartree)."""

    modes: int
    one_body: dict = field(default_factory=dict)
    two_body: dict = field(default_factory=dict)
    two_body_scale: float = 1.0
    constant: float = 0.0
    metadata: str = ""

    def __post_init__(self):
        object.__setattr__(self, "one_body", MappingProxyType(dict(self.one_body)))
        object.__setattr__(self, "two_body", MappingProxyType(dict(self.two_body)))
        self.validate()

    def validate(self):
        if self.modes < 0:
            raise ValidationError("mode count must be non-negative")
        for key in list(self.one_body) + list(self.two_body):
            for idx in key:
                if not 1 <= idx <= self.modes:
                    raise ValidationError(
                        f"index {idx} in {key} outside 1..{self.modes}")
        for (i, j), v in self.one_body.items():
            w = self.one_body.get((j, i))
            if w is None or w != v:
                raise ValidationError(
                    f"one-body entry ({i},{j})={v} has no matching ({j},{i}) entry")


_TOKEN = re.compile(r"\S+")


def parse_integral_file(source):
    """Parse MOLINT text into an :class:`IntegralTable`.

    ``source`` may be ``str``, ``bytes``, a path, or an open file. One-body
    entries given in only one orientation are mirrored; conflicting
    orientations raise :class:`ValidationError`.
    """
    text = _read_text(source)
    modes = None
    scale = 1.0
    constant = 0.0
    one, two = {}, {}
    meta = []

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        tok = _TOKEN.findall(line)
        key = tok[0].lower()
        try:
            if key == "format":
                if tok[1:] != ["molint", MOLINT_VERSION]:
                    raise IntegralParseError(
                        f"unsupported format declaration {' '.join(tok[1:])!r}", lineno)
            elif key == "modes":
                _arity(tok, 2, lineno)
                modes = int(tok[1])
                if modes < 0:
                    raise IntegralParseError("negative mode count", lineno)
            elif key == "two_body_scale":
                _arity(tok, 2, lineno)
                scale = _real(tok[1], lineno)
            elif key == "constant":
                _arity(tok, 2, lineno)
                constant = _real(tok[1], lineno)
            elif key == "metadata":
                meta.append(line.split(None, 1)[1].strip() if len(tok) > 1 else "")
            elif key in ("1body", "2body"):
                n_idx = 2 if key == "1body" else 4
                _arity(tok, n_idx + 2, lineno)
                if modes is None:
                    raise IntegralParseError("integral entry before 'modes' header", lineno)
                idx = tuple(int(x) for x in tok[1:1 + n_idx])
                value = _real(tok[-1], lineno)
                for i in idx:
                    if not 1 <= i <= modes:
                        raise ValidationError(
                            f"line {lineno}: index {i} outside 1..{modes}")
                target = one if key == "1body" else two
                if idx in target:
                    raise IntegralParseError(f"duplicate entry {idx}", lineno)
                target[idx] = value
            else:
                raise IntegralParseError(f"unknown directive {tok[0]!r}", lineno)
        except ValueError as exc:
            if isinstance(exc, (IntegralParseError, ValidationError)):
                raise
            raise IntegralParseError(str(exc), lineno) from None

    if modes is None:
        raise IntegralParseError("missing 'modes' header")

    mirrored = dict(one)
    for (i, j), v in one.items():
        w = one.get((j, i))
        if w is None:
            mirrored[j, i] = v
        elif w != v:
            raise ValidationError(
                f"one-body entries ({i},{j})={v} and ({j},{i})={w} are not symmetric")

    return IntegralTable(modes, mirrored, two, scale, constant, "\n".join(meta))


def _read_text(source):
    if isinstance(source, Path):
        return source.read_text(encoding="utf-8")
    if isinstance(source, bytes):
        return source.decode("utf-8")
    if isinstance(source, io.IOBase) or hasattr(source, "read"):
        data = source.read()
        return data.decode("utf-8") if isinstance(data, bytes) else data
    return str(source)


def _arity(tok, n, lineno):
    if len(tok) != n:
        raise IntegralParseError(
            f"{tok[0]!r} expects {n - 1} fields, got {len(tok) - 1}", lineno)


def _real(s, lineno):
    try:
        v = float(s)
    except ValueError:
        raise IntegralParseError(f"not a real number: {s!r}", lineno) from None
    if not math.isfinite(v):
        raise IntegralParseError(f"non-finite value {s!r}", lineno)
    return v


def format_integral_file(table):
    """Serialize a table to MOLINT text; floats use ``repr`` so they round-trip."""
    out = ["format molint " + MOLINT_VERSION]
    for line in table.metadata.splitlines():
        out.append(f"metadata {line}")
    out.append(f"modes {table.modes}")
    if table.two_body_scale != 1.0:
        out.append(f"two_body_scale {table.two_body_scale!r}")
    if table.constant != 0.0:
        out.append(f"constant {table.constant!r}")
    for (i, j), v in table.one_body.items():
        out.append(f"1body {i} {j} {v!r}")
    for (i, j, k, l), v in table.two_body.items():
        out.append(f"2body {i} {j} {k} {l} {v!r}")
    return "\n".join(out) + "\n"


def load_integrals(path):
    return parse_integral_file(Path(path))


def bundled_h2_path():
    return Path(__file__).with_name("data") / "h2_sto3g.molint"


def load_h2():
    """Hydrogen in STO-3G at 0.7414 Angstrom, as shipped with the package."""
    return parse_integral_file(bundled_h2_path())


def build_molecular_hamiltonian(table):
    """Assemble ``sum h_ij a_i^ a_j + sum s*h_ijkl a_i^ a_j^ a_k a_l (+ constant)``.

    Only the entries present in the table are used; no permutational
    symmetry is applied. ``s`` is ``table.two_body_scale``.
    """
    terms = []
    if table.constant:
        terms.append(FermionTerm(table.constant, ()))
    for (i, j), v in table.one_body.items():
        if v:
            terms.append(FermionTerm(v, (cre(i), ann(j))))
    for (i, j, k, l), v in table.two_body.items():
        if v:
            terms.append(FermionTerm(table.two_body_scale * v,
                                     (cre(i), cre(j), ann(k), ann(l))))
    op = FermionOperator(table.modes, terms)
    if not op.is_hermitian():
        raise ValidationError("assembled Hamiltonian is not Hermitian")
    return op


# --------------------------------------------------------------------------
# operator taxonomy

class Tag(enum.Enum):
    NUMBER = "Number"
    COULOMB_EXCHANGE = "CoulombExchange"
    EXCITATION = "Excitation"
    NUMBER_EXCITATION = "NumberExcitation"
    DOUBLE_EXCITATION = "DoubleExcitation"
    PAIR_CREATION = "PairCreation"
    CONSTANT = "Constant"
    UNSUPPORTED = "Unsupported"


@dataclass(frozen=True)
class OperatorClass:
    tag: Tag
    odd_parity: bool = False

    def __str__(self):
        return self.tag.value


@dataclass(frozen=True)
class TemplateMatch:
    """A term rewritten into one of the template shapes.

    ``term == sign * template(indices)`` where the template is, per tag:
    Number ``a_i^ a_i``; CoulombExchange ``a_i^ a_j^ a_j a_i``; Excitation
    ``a_i^ a_j``; NumberExcitation ``a_i^ a_j^ a_j a_k``; DoubleExcitation
    ``a_i^ a_j^ a_k a_l``; PairCreation ``a_i^ a_j^`` (or its adjoint
    ``a_j a_i`` with ``creation=False``).
    """

    tag: Tag
    indices: tuple
    sign: int = 1
    creation: bool = True

    @property
    def self_adjoint(self):
        return self.tag in (Tag.NUMBER, Tag.COULOMB_EXCHANGE, Tag.CONSTANT)


def match_template(term):
    """Rewrite ``term`` into its template shape, or return ``None``."""
    f = term.factors
    if not f:
        return TemplateMatch(Tag.CONSTANT, ())
    if len(f) % 2 or not term.is_normal_ordered():
        return None
    n_cre = sum(x.dagger for x in f)
    m = [x.mode for x in f]
    if len(f) == 2:
        if n_cre == 1:
            if m[0] == m[1]:
                return TemplateMatch(Tag.NUMBER, (m[0],))
            return TemplateMatch(Tag.EXCITATION, (m[0], m[1]))
        if m[0] == m[1]:
            return None
        if n_cre == 2:
            return TemplateMatch(Tag.PAIR_CREATION, (m[0], m[1]))
        # a_p a_q is the adjoint of a_q^ a_p^
        return TemplateMatch(Tag.PAIR_CREATION, (m[1], m[0]), creation=False)
    if len(f) == 4 and n_cre == 2:
        p, q, r, s = m
        if p == q or r == s:
            return None
        cre_set, ann_set = {p, q}, {r, s}
        shared = cre_set & ann_set
        if len(shared) == 2:
            # a_p^ a_q^ a_q a_p, or a_p^ a_q^ a_p a_q = -(that)
            return TemplateMatch(Tag.COULOMB_EXCHANGE, (p, q), 1 if s == p else -1)
        if len(shared) == 1:
            (j,) = shared
            i = q if p == j else p
            k = r if s == j else s
            sign = (-1 if p == j else 1) * (-1 if s == j else 1)
            return TemplateMatch(Tag.NUMBER_EXCITATION, (i, j, k), sign)
        return TemplateMatch(Tag.DOUBLE_EXCITATION, (p, q, r, s))
    return None


def _adjoint_equal(a, b, tol=1e-12):
    sa, ka = block_sorted(a.adjoint().factors)
    sb, kb = block_sorted(b.factors)
    if ka != kb or sa == 0 or sb == 0:
        return False
    return abs(sa * a.adjoint().coefficient - sb * b.coefficient) <= tol


def classify_term(term, partner=None):
    """Classify a term (and optionally its Hermitian-conjugate partner).

    Odd products of ladder operators come back as Unsupported with
    ``odd_parity=True``. A ``partner`` that is not the adjoint of ``term``
    makes the pair Unsupported.
    """
    n_factors = len(term.factors) + (len(partner.factors) if partner else 0)
    if len(term.factors) % 2 or n_factors % 2:
        return OperatorClass(Tag.UNSUPPORTED, odd_parity=True)
    match = match_template(term)
    if match is None or match.tag is Tag.CONSTANT and partner is not None:
        return OperatorClass(Tag.UNSUPPORTED)
    if partner is not None:
        if match.self_adjoint or not _adjoint_equal(term, partner):
            return OperatorClass(Tag.UNSUPPORTED)
    return OperatorClass(match.tag)


def pair_terms(op):
    """Group the terms of a Hermitian operator into ``(term, partner)`` pairs.

    Self-adjoint templates get ``partner=None``. Raises ValidationError when
    a term's adjoint is missing or carries a different coefficient.
    """
    terms = list(op.terms)
    index = {}
    for n, t in enumerate(terms):
        index[block_sorted(t.factors)[1]] = n
    used = set()
    out = []
    for n, t in enumerate(terms):
        if n in used:
            continue
        used.add(n)
        match = match_template(t)
        if match is not None and match.self_adjoint:
            out.append((t, None))
            continue
        adj_key = block_sorted(t.adjoint().factors)[1]
        m = index.get(adj_key)
        if m is None or m in used or not _adjoint_equal(t, terms[m]):
            raise ValidationError(f"term {t} has no matching Hermitian conjugate")
        used.add(m)
        out.append((t, terms[m]))
    return out
