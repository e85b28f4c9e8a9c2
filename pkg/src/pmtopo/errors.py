"""Exception types shared across the package."""


class PmtopoError(Exception):
    """Base class for all errors raised by this package."""


class SizeCapError(PmtopoError, ValueError):
    """A construction would exceed a configured size cap."""


class LabelError(PmtopoError, KeyError):
    """An edge label does not resolve to an edge of the given graph."""

    def __str__(self) -> str:  # KeyError quotes its payload; keep the message readable
        return self.args[0] if self.args else ""


class PairingError(PmtopoError, ValueError):
    """A partial pairing is malformed or used where an acyclic one is required."""


class VoidComplexError(PmtopoError, ValueError):
    """The requested quantity is undefined for the void complex."""
