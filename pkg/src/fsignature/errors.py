"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class FSignatureError(Exception):
    """Base class for all package errors."""


class NotPrimeError(FSignatureError, ValueError):
    pass


class ZeroInversion(FSignatureError, ZeroDivisionError):
    pass


class ParseError(FSignatureError, ValueError):
    """Malformed polynomial text; ``position`` is a 0-based character offset."""

    def __init__(self, position: int, message: str):
        self.position = position
        self.message = message
        super().__init__(f"at position {position}: {message}")


class UnknownVariable(ParseError):
    def __init__(self, position: int, name: str):
        self.name = name
        super().__init__(position, f"unknown variable {name!r}")


class RingMismatch(FSignatureError, ValueError):
    pass


class UnitElement(FSignatureError, ValueError):
    """f is a unit at the origin, so its F-pure threshold is +infinity."""


class ResourceLimit(FSignatureError, RuntimeError):
    """The requested quotient has more standard monomials than the configured ceiling."""


class MissingSample(FSignatureError, LookupError):
    pass


class DuplicateAbscissa(FSignatureError, ValueError):
    pass


class GapFormulaViolation(FSignatureError, ArithmeticError):
    pass
