"""
Exception hierarchy for RecurrentGF.

Every error raised by the engine derives from EngineError and carries a
stable diagnostic code plus the process exit code the CLI reports for it:
1 for bad input, 2 for constructions the engine does not support, 3 for
verification failures.
"""

from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class Diagnostic:
    """A single validation finding."""
    code: str
    message: str

    def __str__(self):
        return f"{self.code}: {self.message}"


class EngineError(Exception):
    """Base class for all engine errors."""
    code = "EngineError"
    exit_code = 1

    def __init__(self, message: str = "", diagnostics: Sequence[Diagnostic] = ()):
        self.diagnostics = list(diagnostics)
        if not message and self.diagnostics:
            message = "; ".join(str(d) for d in self.diagnostics)
        super().__init__(message or self.code)


class InputError(EngineError):
    """The caller supplied an invalid problem, window or argument."""
    code = "InputError"
    exit_code = 1


class InvalidInput(InputError):
    """Validation failed; the code is taken from the first diagnostic."""
    code = "InvalidInput"

    def __init__(self, message: str = "", diagnostics: Sequence[Diagnostic] = ()):
        super().__init__(message, diagnostics)
        if self.diagnostics:
            self.code = self.diagnostics[0].code


class InvalidEquation(InvalidInput):
    code = "InvalidEquation"


class InvalidData(InvalidInput):
    code = "InvalidData"


class DimensionMismatch(InputError):
    code = "DimensionMismatch"


class BoxTooSmall(InputError):
    code = "BoxTooSmall"


class BoxTooLarge(InputError):
    code = "BoxTooLarge"


class Tau0NotInX0(InputError):
    code = "Tau0NotInX0"


class OutsideWindow(InputError):
    code = "OutsideWindow"


class DivisionByZero(InputError):
    code = "DivisionByZero"


class UnsupportedConstruction(EngineError):
    """The input is valid but outside what the engine can build."""
    code = "UnsupportedConstruction"
    exit_code = 2


class UnsupportedFaceData(UnsupportedConstruction):
    code = "UnsupportedFaceData"


class NotExpandableAtInfinity(UnsupportedConstruction):
    code = "NotExpandableAtInfinity"


class VerificationFailed(EngineError):
    code = "VerificationFailed"
    exit_code = 3
