"""Shared exception types.

The CLI maps these to exit codes: DomainError and DivergenceError exit 1,
usage problems exit 2.  Everything else is a bug.
"""


class KnotstatError(Exception):
    """Base class for all library errors."""


class DomainError(KnotstatError, ValueError):
    """An argument lies outside an operation's stated domain."""


class DivergenceError(KnotstatError, ArithmeticError):
    """A series or product diverges for the requested parameters."""


class CatalogError(KnotstatError, ValueError):
    """A catalog file failed to parse or a record violates an invariant."""


class PresentationError(KnotstatError, ValueError):
    """A group presentation is malformed or fails a required invariant."""
