"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class DegreeError(Exception):
    """Base class for every error raised by this package."""


# -- polynomial algebra -------------------------------------------------------

class ZeroPolynomial(DegreeError, ValueError):
    pass


class NotHomogeneous(DegreeError, ValueError):
    pass


# -- expression parsing -------------------------------------------------------

class ParseError(DegreeError, ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class ExprSyntaxError(ParseError):
    def __init__(self, message: str, offset: int, expected: frozenset[str] = frozenset()):
        if expected:
            message = f"{message}; expected one of {', '.join(sorted(expected))}"
        super().__init__(message, offset)
        self.expected = expected


class NonIntegerExponent(ParseError):
    pass


class NegativeExponent(ParseError):
    pass


# -- winding numbers ----------------------------------------------------------

class WindingError(DegreeError, ArithmeticError):
    pass


class OpenLoop(WindingError):
    pass


class LoopTooCloseToZero(WindingError):
    def __init__(self, phi: float, modulus: float):
        super().__init__(
            f"loop value has modulus {modulus:.3e} at angle {phi:.6f}; "
            "the curve passes (numerically) through 0"
        )
        self.phi = phi
        self.modulus = modulus


class UnresolvedLoop(WindingError):
    def __init__(self, phi: float, depth: int):
        super().__init__(
            f"argument increment near angle {phi:.6f} still unresolved "
            f"after {depth} bisections"
        )
        self.phi = phi
        self.depth = depth


class NonIntegerIndex(WindingError):
    def __init__(self, value: float):
        super().__init__(f"accumulated turning number {value!r} is not an integer")
        self.value = value


# -- root counting ------------------------------------------------------------

class RootOnCircle(DegreeError, ArithmeticError):
    def __init__(self, message: str, phi: float | None = None):
        super().__init__(message)
        self.phi = phi


class NoConvergence(DegreeError, ArithmeticError):
    pass


# -- hypotheses of the degree theorems ----------------------------------------

class HypothesisError(DegreeError):
    """A hypothesis needed by the degree formula fails or cannot be established."""


class LimitDoesNotExist(HypothesisError):
    pass


class TDominanceFailure(HypothesisError):
    pass


class Inconclusive(DegreeError):
    """Subdivision could not certify absence of common zeros on ``box``."""

    def __init__(self, message: str, box=None):
        super().__init__(message)
        self.box = box


class CommonZeroSuspected(Inconclusive, HypothesisError):
    """Subdivision reached the minimum box size around a suspected common zero."""


class CertificationBudgetExceeded(Inconclusive):
    """Subdivision ran out of boxes before finishing; nothing is suspected."""


class GridPointSingular(DegreeError, ArithmeticError):
    pass
