"""Exception types shared across the package.

Everything derives from PermLogicError so callers can catch broadly; the
finer-grained classes mirror the failure modes of the individual modules.
"""


class PermLogicError(Exception):
    """Base class for all errors raised by this package."""


class InvalidWord(PermLogicError, ValueError):
    """A word is not a rearrangement of 1..n."""


class IndexOutOfRange(PermLogicError, IndexError):
    """A position or value index falls outside 1..n."""


class ArityMismatch(PermLogicError, ValueError):
    """Number of blocks does not match the skeleton size in an inflation."""


class EmptyBlock(PermLogicError, ValueError):
    """Inflation blocks must be nonempty."""


class SizeCapExceeded(PermLogicError, ValueError):
    """A requested enumeration or search exceeds the configured cap."""


class MixedSignature(PermLogicError, ValueError):
    """A formula mixes order atoms (<P, <V) with the bijection atom R."""


class SignatureMismatch(PermLogicError, ValueError):
    """A formula's signature does not match the requested interpretation."""


class BadTemplate(PermLogicError, ValueError):
    """A substitution template does not expose exactly two designated free variables."""


class UnboundVariable(PermLogicError, ValueError):
    """Evaluation reached a free variable with no assigned point."""


class NotASentence(PermLogicError, ValueError):
    """Model enumeration requires a formula without free variables."""


class ParseError(PermLogicError, ValueError):
    """Formula text rejected; carries line and column of the offending token."""

    def __init__(self, message, line, column):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class TupleLengthMismatch(PermLogicError, ValueError):
    """Marked EF games need prefixes of equal length."""


class UnsupportedConstraint(PermLogicError, ValueError):
    """Decorated-pattern constraints are limited to single cells."""


class InfiniteBasis(PermLogicError, ValueError):
    """Grid entries must be EMPTY or have a finite avoidance basis."""


class InvalidOccurrence(PermLogicError, ValueError):
    """An index tuple is not a valid increasing occurrence."""


class NotBalanced(PermLogicError, ValueError):
    """Cycle decomposition requires matching row and column marginals."""


class MatrixEnumerationOverflow(PermLogicError, ValueError):
    """Balanced-matrix enumeration exceeded the configured count cap."""


class InvalidCycle(PermLogicError, ValueError):
    """An expansion cycle must consist of distinct indices from [k+1]."""
