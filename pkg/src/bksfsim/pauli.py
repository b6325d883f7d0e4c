"""Pauli strings and weighted sums of them.

Qubits are numbered from 1. Internally a string stores its letters in qubit
order (qubit 1 first); the rendered label runs from qubit n down to qubit 1,
so ``"ZXXZ"`` means Z on qubit 4, X on qubits 3 and 2, Z on qubit 1. Dense
matrices built from these objects use little-endian basis labels: qubit 1 is
the least significant bit.
"""

from dataclasses import dataclass
from numbers import Number

from .exceptions import DimensionError, ValidationError

DROP_TOL = 1e-12

_LETTERS = "IXYZ"

# (a, b) -> (phase, a*b) for single-qubit Paulis
_PRODUCT = {}
for _p in _LETTERS:
    _PRODUCT["I", _p] = (1, _p)
    _PRODUCT[_p, "I"] = (1, _p)
    _PRODUCT[_p, _p] = (1, "I")
for _a, _b, _c in ("XYZ", "YZX", "ZXY"):
    _PRODUCT[_a, _b] = (1j, _c)
    _PRODUCT[_b, _a] = (-1j, _c)


@dataclass(frozen=True, order=True)
class PauliString:
    """Dense Pauli string on ``len(letters)`` qubits, qubit 1 first."""

    letters: str

    def __post_init__(self):
        bad = set(self.letters) - set(_LETTERS)
        if bad:
            raise ValidationError(f"invalid Pauli letters {sorted(bad)}")

    @classmethod
    def identity(cls, n_qubits):
        return cls("I" * n_qubits)

    @classmethod
    def from_label(cls, label):
        """Parse a rendered label written from qubit n down to qubit 1."""
        return cls(label.upper()[::-1])

    @classmethod
    def from_sparse(cls, n_qubits, ops):
        """Build from ``{qubit: letter}`` with 1-based qubit numbers."""
        letters = ["I"] * n_qubits
        for qubit, letter in dict(ops).items():
            if not 1 <= qubit <= n_qubits:
                raise DimensionError(f"qubit {qubit} outside 1..{n_qubits}")
            letters[qubit - 1] = letter
        return cls("".join(letters))

    @property
    def n_qubits(self):
        return len(self.letters)

    @property
    def label(self):
        return self.letters[::-1]

    def __getitem__(self, qubit):
        """Letter acting on 1-based ``qubit``."""
        return self.letters[qubit - 1]

    def support(self):
        """1-based qubits carrying a non-identity letter, ascending."""
        return [q + 1 for q, p in enumerate(self.letters) if p != "I"]

    def is_identity(self):
        return set(self.letters) <= {"I"}

    def is_z_only(self):
        return set(self.letters) <= {"I", "Z"}

    def __str__(self):
        return self.label

    def __repr__(self):
        return f"PauliString({self.label!r})"


def _check_same_size(a, b):
    if a.n_qubits != b.n_qubits:
        raise DimensionError(
            f"Pauli strings act on {a.n_qubits} and {b.n_qubits} qubits")


def multiply_strings(a, b):
    """Return ``(phase, product)`` with ``a @ b == phase * product`` exactly.

    The phase is one of ``1, 1j, -1, -1j``.
    """
    _check_same_size(a, b)
    phase = 1
    out = []
    for p, q in zip(a.letters, b.letters):
        f, r = _PRODUCT[p, q]
        phase *= f
        out.append(r)
    return phase, PauliString("".join(out))


def commutes(a, b):
    """True iff the strings commute (an even number of clashing positions)."""
    _check_same_size(a, b)
    clashes = sum(1 for p, q in zip(a.letters, b.letters)
                  if p != "I" and q != "I" and p != q)
    return clashes % 2 == 0


def weight_profile(s):
    """Return ``(weight, non_z)``: non-identity letters and X/Y letters."""
    weight = sum(1 for p in s.letters if p != "I")
    non_z = sum(1 for p in s.letters if p in "XY")
    return weight, non_z


@dataclass(frozen=True)
class PauliTerm:
    coefficient: complex
    string: PauliString

    def __str__(self):
        return f"{_format_coeff(self.coefficient)} {self.string.label}"


def _format_coeff(c, digits=None):
    c = complex(c)
    fmt = "{:.%df}" % digits if digits is not None else "{!r}"
    if c.imag == 0:
        return fmt.format(c.real)
    return "({}{}{}j)".format(fmt.format(c.real),
                              "+" if c.imag >= 0 else "-",
                              fmt.format(abs(c.imag)))


class PauliOperator:
    """Complex-weighted sum of Pauli strings on a fixed number of qubits.

    Instances are treated as immutable; arithmetic returns new operators.
    Like terms are merged on construction, but nothing is dropped until
    :meth:`canonicalize` is called.
    """

    __slots__ = ("n_qubits", "_terms")

    def __init__(self, n_qubits, terms=()):
        self.n_qubits = int(n_qubits)
        acc = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for key, coeff in _normalize_items(items):
            if len(key) != self.n_qubits:
                raise DimensionError(
                    f"term on {len(key)} qubits in {self.n_qubits}-qubit operator")
            acc[key] = acc.get(key, 0) + complex(coeff)
        self._terms = acc

    @classmethod
    def identity(cls, n_qubits, coefficient=1.0):
        return cls(n_qubits, {"I" * n_qubits: coefficient})

    @classmethod
    def from_string(cls, string, coefficient=1.0):
        return cls(string.n_qubits, {string.letters: coefficient})

    @classmethod
    def from_label(cls, label, coefficient=1.0):
        return cls.from_string(PauliString.from_label(label), coefficient)

    @classmethod
    def from_sparse(cls, n_qubits, ops, coefficient=1.0):
        return cls.from_string(PauliString.from_sparse(n_qubits, ops), coefficient)

    @classmethod
    def from_text(cls, text):
        """Parse the ``<coeff> <label>`` lines written by :meth:`to_text`."""
        pairs = []
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            coeff, label = line.split()
            pairs.append((PauliString.from_label(label).letters,
                          complex(coeff.strip("()"))))
        if not pairs:
            raise ValidationError("empty Pauli operator text")
        return cls(len(pairs[0][0]), pairs)

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self.terms())

    def __contains__(self, label):
        return PauliString.from_label(label).letters in self._terms

    def items(self):
        """``(PauliString, coefficient)`` pairs in storage order."""
        return [(PauliString(k), c) for k, c in self._terms.items()]

    def terms(self):
        """Terms sorted lexicographically by rendered label."""
        return [PauliTerm(c, PauliString(k))
                for k, c in sorted(self._terms.items(), key=lambda kv: kv[0][::-1])]

    def coefficient(self, label):
        """Coefficient of the string with rendered ``label`` (0 if absent)."""
        return self._terms.get(PauliString.from_label(label).letters, 0j)

    def constant(self):
        return self._terms.get("I" * self.n_qubits, 0j)

    def __add__(self, other):
        if isinstance(other, Number):
            other = PauliOperator.identity(self.n_qubits, other)
        if not isinstance(other, PauliOperator):
            return NotImplemented
        _check_op_size(self, other)
        return PauliOperator(self.n_qubits,
                             list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Number):
            return PauliOperator(self.n_qubits,
                                 [(k, c * other) for k, c in self._terms.items()])
        if not isinstance(other, PauliOperator):
            return NotImplemented
        _check_op_size(self, other)
        out = []
        for ka, ca in self._terms.items():
            sa = PauliString(ka)
            for kb, cb in other._terms.items():
                phase, s = multiply_strings(sa, PauliString(kb))
                out.append((s.letters, phase * ca * cb))
        return PauliOperator(self.n_qubits, out)

    def __rmul__(self, other):
        if isinstance(other, Number):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        return self * (1 / other)

    def adjoint(self):
        return PauliOperator(self.n_qubits,
                             [(k, c.conjugate()) for k, c in self._terms.items()])

    def canonicalize(self, tol=DROP_TOL):
        """Drop terms with ``|coefficient| <= tol``."""
        if tol < 0:
            raise ValidationError("tolerance must be non-negative")
        return PauliOperator(self.n_qubits,
                             {k: c for k, c in self._terms.items() if abs(c) > tol})

    def is_hermitian(self, tol=1e-10):
        return all(abs(c.imag) <= tol for c in self._terms.values())

    def real(self, tol=1e-10):
        """Copy with real coefficients; raises if any imaginary part exceeds ``tol``."""
        if not self.is_hermitian(tol):
            raise ValidationError("operator has complex coefficients")
        return PauliOperator(self.n_qubits,
                             {k: complex(c.real) for k, c in self._terms.items()})

    def without_identity(self):
        ident = "I" * self.n_qubits
        return PauliOperator(self.n_qubits,
                             {k: c for k, c in self._terms.items() if k != ident})

    def allclose(self, other, atol=1e-10):
        diff = (self - other)._terms.values()
        return all(abs(c) <= atol for c in diff)

    def __eq__(self, other):
        if not isinstance(other, PauliOperator):
            return NotImplemented
        return (self.n_qubits == other.n_qubits
                and self.canonicalize()._terms == other.canonicalize()._terms)

    __hash__ = None

    def to_text(self, digits=None):
        """One ``<coeff> <label>`` line per term, sorted by label."""
        return "\n".join(f"{_format_coeff(t.coefficient, digits)} {t.string.label}"
                         for t in self.terms())

    def __str__(self):
        return self.to_text(digits=6) or "0"

    def __repr__(self):
        return f"PauliOperator(n_qubits={self.n_qubits}, terms={len(self)})"


def _normalize_items(items):
    for key, coeff in items:
        if isinstance(key, PauliString):
            key = key.letters
        yield key, coeff


def _check_op_size(a, b):
    if a.n_qubits != b.n_qubits:
        raise DimensionError(
            f"operators act on {a.n_qubits} and {b.n_qubits} qubits")
