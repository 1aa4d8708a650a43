"""Named domain errors.

Every failure a caller can act on has its own class so the CLI and the MCP
server can surface the name verbatim.
"""

from __future__ import annotations


class MonoidError(ValueError):
    """Base class for all domain errors raised by mcp_catenary."""

    @property
    def name(self) -> str:
        return type(self).__name__


# monoid.py
class EmptyInput(MonoidError):
    pass


class InvalidGenerator(MonoidError):
    pass


class NotCofinite(MonoidError):
    pass


class IntegerOverflow(MonoidError):
    pass


class NotAnElement(MonoidError):
    pass


# factorization.py
class DimensionMismatch(MonoidError):
    pass


# catenary.py
class WindowTooSmall(MonoidError):
    pass


class ExplosionGuard(MonoidError):
    pass


# construction.py
class NotAGluing(MonoidError):
    pass


class CatenaryTooSmall(MonoidError):
    pass


class NotCoprime(MonoidError):
    pass


class NotMinimal(MonoidError):
    pass


class LongFactorization(MonoidError):
    pass


class InvalidTarget(MonoidError):
    pass


class BadExplicitB(MonoidError):
    pass


class NoAdmissibleB(MonoidError):
    pass


class BaseCaseSearchExhausted(MonoidError):
    pass


# oracle.py
class CapExceeded(MonoidError):
    pass
