"""Exception hierarchy shared by every module.

Each error carries the structured witness the CLI prints on exit code 3.
"""
from __future__ import annotations


class ScfactError(Exception):
    """Base class for all library errors."""

    def witness(self) -> dict:
        return {"error": type(self).__name__, "message": str(self)}


class RingMismatchError(ScfactError, TypeError):
    pass


class NotAUnit(ScfactError, ArithmeticError):
    def __init__(self, value, reason: str, witness=None):
        self.value = value
        self.reason = reason
        self.detail = witness
        super().__init__(f"{value} is not a unit: {reason}")

    def witness(self) -> dict:
        return {"error": "NotAUnit", "value": str(self.value),
                "reason": self.reason, "witness": self.detail}


class NoSquareRoot(ScfactError, ArithmeticError):
    pass


class InfiniteRing(ScfactError, ValueError):
    pass


class ParseError(ScfactError, ValueError):
    def __init__(self, message: str, offset: int):
        self.offset = offset
        super().__init__(f"{message} at offset {offset}")

    def witness(self) -> dict:
        return {"error": "ParseError", "message": str(self), "offset": self.offset}


class ExpressionTypeError(ScfactError, TypeError):
    pass


class NonUnitTerm(ScfactError, ArithmeticError):
    """A sequence term needed as a divisor is not invertible."""

    def __init__(self, index: int, classification: str, value=None, needed_for: int | None = None):
        self.index = index
        self.classification = classification
        self.value = value
        self.needed_for = needed_for
        msg = f"term {index} ({value}) is {classification}"
        if needed_for is not None:
            msg += f"; cannot generate term {needed_for}"
        super().__init__(msg)

    def witness(self) -> dict:
        return {"error": "NonUnitTerm", "index": self.index,
                "classification": self.classification,
                "value": None if self.value is None else str(self.value),
                "needed_for": self.needed_for}


class NotAnEigensequence(ScfactError, ValueError):
    def __init__(self, index: int, residual):
        self.index = index
        self.residual = residual
        super().__init__(f"characteristic residual at n={index} is {residual}, not zero")

    def witness(self) -> dict:
        return {"error": "NotAnEigensequence", "index": self.index, "residual": str(self.residual)}


class HypothesisViolated(ScfactError, ValueError):
    def __init__(self, message: str, index: int | None = None, point: int | None = None):
        self.index = index
        self.point = point
        super().__init__(message)

    def witness(self) -> dict:
        return {"error": "HypothesisViolated", "message": str(self),
                "index": self.index, "point": self.point}


class StageFailed(ScfactError):
    def __init__(self, depth: int, reason: str):
        self.depth = depth
        self.reason = reason
        super().__init__(f"cascade stage {depth} failed: {reason}")

    def witness(self) -> dict:
        return {"error": "StageFailed", "depth": self.depth, "reason": self.reason}


class WrongRegion(ScfactError, ValueError):
    pass


class ValidationError(ScfactError, ValueError):
    """Problem-file validation failure; ``path`` locates the offending field."""

    def __init__(self, message: str, path: str = "$"):
        self.path = path
        super().__init__(f"{path}: {message}")


class OracleMismatch(ScfactError, ArithmeticError):
    """A structured solution disagrees with direct iteration."""

    def __init__(self, index: int, expected, got):
        self.index = index
        self.expected = expected
        self.got = got
        super().__init__(f"term {index}: iteration gives {expected}, factorization gives {got}")

    def witness(self) -> dict:
        return {"error": "OracleMismatch", "index": self.index,
                "expected": str(self.expected), "got": str(self.got)}
