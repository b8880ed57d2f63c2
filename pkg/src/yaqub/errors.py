"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class RingError(Exception):
    """Base class for all errors raised by this package."""


class RingSyntaxError(RingError, ValueError):
    """A ring expression could not be parsed."""

    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.text = text
        self.pos = pos
        self.message = message
        if text:
            message = f"{message} at position {pos}\n  {text}\n  {' ' * pos}^"
        super().__init__(message)


class MalformedExpr(RingError, ValueError):
    """A ring expression has invalid parameters (bad modulus, size, element)."""


class OrderOverflow(RingError):
    """The ring described by an expression is larger than the configured maximum."""


class NotIdempotent(MalformedExpr):
    """A corner was requested for an element with e*e != e."""


class NotAnIdeal(RingError, ValueError):
    """A set of elements handed to quotient() is not a two-sided ideal."""


class ForeignElementError(RingError, ValueError):
    """An element handle was used with a ring that does not own it."""


class SizeGuard(RingError):
    """A brute-force routine refused to run on a ring above its size guard."""


class DegenerateRing(RingError):
    """A class predicate was evaluated on the zero ring."""


class PreconditionFailed(RingError):
    """The hypotheses of a constructive procedure do not hold."""


class WitnessNotFound(RingError):
    """A witness that a theorem guarantees could not be located."""


class ClassificationContradiction(RingError):
    """Classification found a Yaqub nil-clean ring matching no structural case."""
