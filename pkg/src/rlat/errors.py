"""Exception types shared across the package.

Every error raised by the library derives from RlatError, so callers (and
the CLI dispatcher) can map failures to exit codes in one place.
"""


class RlatError(Exception):
    """Base class for all errors raised by this package."""


class CapExceeded(RlatError):
    """A configured size, count, or time limit was exceeded."""


class TableOutOfRange(RlatError):
    """An operation table contains an entry outside the carrier range."""


class NotResiduated(RlatError):
    """For some pair (x, y) the set {z : x*z <= y} has no greatest element."""

    def __init__(self, x: int, y: int):
        super().__init__(f"no greatest z with x⊙z ≤ y for x={x}, y={y}")
        self.witness = (x, y)


class NotProper(RlatError):
    """The full carrier was passed where a proper filter is required."""


class NotPrime(RlatError):
    """A non-prime filter was passed where a prime filter is required."""


class Overlap(RlatError):
    """The filter and the join-closed set must be disjoint but are not."""


class BaseNotContained(RlatError):
    """The base filter is not contained in the set the operation requires."""


class NotPrimeCollection(RlatError):
    """A collection member fails the prime filter test."""


class MultipleMaximal(RlatError):
    """More than one maximal filter lies above the given filter."""

    def __init__(self, maximal):
        self.maximal = tuple(maximal)
        super().__init__(f"{len(self.maximal)} maximal filters above the given filter")


class NotPm(RlatError):
    """Some prime filter lies below more than one maximal filter."""

    def __init__(self, witness: int):
        self.witness = witness
        super().__init__("a prime filter lies below more than one maximal filter")


class InternalInconsistency(RlatError):
    """Two computations that are provably equal disagreed.

    This is the theorem-violation trap: it never fires on a correct build.
    """


class ParseError(RlatError):
    """Malformed input file."""

    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class ValidationFailed(RlatError):
    """Input tables do not satisfy the residuated-lattice axioms."""

    def __init__(self, report):
        self.report = report
        super().__init__(f"{len(report.violations)} axiom violation(s)")


class ArrowMismatch(RlatError):
    """A supplied arrow table differs from the derived residuum."""

    def __init__(self, cell: tuple[str, str], given: str, derived: str):
        self.cell = cell
        self.given = given
        self.derived = derived
        super().__init__(
            f"arrow({cell[0]},{cell[1]}) is {given} but the residuum is {derived}"
        )
