"""Error hierarchy shared by the library, the CLI and the HTTP endpoints.

``InputError`` covers malformed or invalid input (CLI exit 1, HTTP 400).
``PreconditionError`` covers well-formed input for which a requested
computation is mathematically undefined (CLI exit 2, HTTP 422).
"""
from typing import Any


class ToricError(Exception):
    exit_code: int = 1

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details = details

    @property
    def kind(self) -> str:
        return type(self).__name__

    def to_dict(self) -> dict:
        payload = {"error": self.kind, "message": self.message}
        if self.details:
            payload["details"] = self.details
        return payload


class InputError(ToricError, ValueError):
    exit_code = 1


class PreconditionError(ToricError):
    exit_code = 2


# input errors

class TooFewEdges(InputError):
    pass


class NotPrimitive(InputError):
    pass


class InvalidPair(InputError):
    def __init__(self, message: str, violations: list):
        super().__init__(message, violations=[v.to_dict() for v in violations])
        self.violations = violations


class DependentBasis(InputError):
    pass


class BadIndex(InputError):
    pass


class IndexOutOfRange(InputError):
    pass


class BadMorphism(InputError):
    pass


# precondition errors

class NoSmoothVertex(PreconditionError):
    pass


class ShearRejected(PreconditionError):
    pass


class NotNormalized(PreconditionError):
    pass


class ZeroProduct(PreconditionError):
    pass


class NotInvertible(PreconditionError):
    pass


class IntegralityViolation(PreconditionError):
    pass


class DegenerateQuotient(PreconditionError):
    pass


class LabelingMismatch(PreconditionError):
    pass


class IncompatiblePair(PreconditionError):
    pass


class UnsupportedLifting(PreconditionError):
    pass
