"""Exception types shared across the toolkit."""


class ToolkitError(Exception):
    """Base class for all toolkit errors."""


class NotPrime(ToolkitError):
    """A claimed prime (or prime power) failed the primality check."""


class CapExceeded(ToolkitError):
    """A requested computation is larger than the configured size cap."""


class NoIrreducibleFound(ToolkitError):
    """Exhausted a modulus search that cannot mathematically fail."""


class DivisionByZero(ToolkitError):
    """Multiplicative inverse of the zero element."""


class ZeroElement(ToolkitError):
    """Operation requires a nonzero field element."""


class NotADivisor(ToolkitError):
    """Argument must divide the relevant group or polynomial order."""


class TooLarge(ToolkitError):
    """Integer exceeds the deterministic factoring limit (2^64)."""


# Same failure mode seen from the criterion side.
TooLargeToFactor = TooLarge


class HypothesisViolated(ToolkitError):
    """A character-sum configuration violates its theorem's hypotheses."""


class BoundViolated(ToolkitError):
    """A measured sum exceeded its proven bound (bug or genuine discrepancy)."""
