"""
Exceptions raised by the domcol library.

Every error the library raises on purpose derives from DomColError so
callers (the CLI in particular) can catch one type.
"""


class DomColError(Exception):
    pass


class UsageError(DomColError):
    """Invalid input: bad vertex, malformed text, broken structural promise."""


class GuardExceededError(DomColError):
    """Instance is larger than a configured size guard allows."""


class InfeasibleError(DomColError):
    """Covering program has a demand no column can meet."""
