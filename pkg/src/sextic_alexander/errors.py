"""Exception hierarchy; each class carries the CLI exit code it maps to."""


class SexticError(Exception):
    exit_code = 1


class ParseError(SexticError, ValueError):
    exit_code = 2


class VerificationError(SexticError):
    """A declared point is not singular, or a declared type does not match."""

    exit_code = 3


class UnsupportedGermError(SexticError):
    """Degenerate or non-catalog germ the engine cannot handle."""

    exit_code = 4


class CapExceededError(SexticError):
    """A truncation or degree cap was reached before certification."""

    exit_code = 5


class TruncationError(CapExceededError):
    """Known jet terms do not determine the requested quantity."""
