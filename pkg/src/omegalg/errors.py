"""Exception hierarchy shared by the kernel and the command line."""


class OmegaError(Exception):
    """Base class for every error raised by omegalg."""


class ParseError(OmegaError, ValueError):
    """Malformed signature, term, polynomial or series text."""


class ValidationError(OmegaError, ValueError):
    """Well-formed input that is inconsistent with its ambient signature."""


class DomainError(OmegaError, ValueError):
    """Arguments outside the domain of an operation."""


class InvariantViolation(OmegaError, RuntimeError):
    """Two independent computations of the same quantity disagree."""
