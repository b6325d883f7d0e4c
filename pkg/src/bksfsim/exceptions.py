"""Exception hierarchy shared by every module.

Each class carries the process exit code the command-line interface uses when
the error escapes a subcommand.
"""


class BKSFError(Exception):
    """Base class for all package errors."""

    exit_code = 3


class IntegralParseError(BKSFError, ValueError):
    """Malformed integral file."""

    exit_code = 1

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class ValidationError(BKSFError, ValueError):
    """Input violates a structural invariant (range, symmetry, hermiticity)."""

    exit_code = 2


class DimensionError(ValidationError):
    """Operands act on different numbers of qubits."""


class TransformError(ValidationError):
    """A fermionic term cannot be represented by the requested mapping."""


class UnsupportedGraphError(ValidationError):
    """Interaction graph outside what the superfast encoding handles here."""


class NumericError(BKSFError, ArithmeticError):
    """Numerical procedure failed (size cap, degeneracy, zero norm)."""

    exit_code = 3


class DegenerateSeedError(NumericError):
    """Code-space projection annihilated the seed basis state."""


class AmbiguousOverlapError(NumericError):
    """Two eigenvectors tie for maximum overlap with the reference state."""
