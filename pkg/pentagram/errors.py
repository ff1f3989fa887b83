from typing import Any, Optional

__all__ = [
    "PentagramError",
    "VerificationFailure",
    "BadArguments",
    "VariantMismatch",
    "ExhaustedRetries",
    "DegenerateSpan",
    "DegenerateIntersection",
    "DegenerateInput",
    "GenericityFailure",
    "NotCorrugated",
    "NotPartiallyCorrugated",
    "NormalizationFailure",
    "NonPeriodic",
    "DivisionByZero",
    "StructureMismatch",
    "ZeroDiscriminant",
    "NonSimpleBranching",
    "ChartFailure",
]


class PentagramError(Exception):
    """Base class of every structured failure; `exit_code` is what main.py returns."""

    exit_code = 1

    def __init__(
        self, message: str = "", index: Optional[int] = None, detail: Any = None
    ):
        super().__init__(message)
        self.message = message
        self.index = index
        self.detail = detail

    def todict(self):
        d = {"error": type(self).__name__, "message": self.message}
        if self.index is not None:
            d["index"] = self.index
        if self.detail is not None:
            d["detail"] = self.detail
        return d


class VerificationFailure(PentagramError):
    exit_code = 1


class BadArguments(PentagramError):
    exit_code = 2


class VariantMismatch(PentagramError):
    exit_code = 2


class ExhaustedRetries(PentagramError):
    exit_code = 3


# Degenerate geometry
class DegenerateSpan(PentagramError):
    exit_code = 4


class DegenerateIntersection(PentagramError):
    exit_code = 4


class DegenerateInput(PentagramError):
    exit_code = 4


class GenericityFailure(PentagramError):
    exit_code = 4


class NotCorrugated(PentagramError):
    exit_code = 4


class NotPartiallyCorrugated(PentagramError):
    exit_code = 4


class NormalizationFailure(PentagramError):
    exit_code = 4


class NonPeriodic(PentagramError):
    exit_code = 4


class DivisionByZero(PentagramError):
    exit_code = 4


# Spectral structure
class StructureMismatch(PentagramError):
    exit_code = 5


class ZeroDiscriminant(PentagramError):
    exit_code = 5


class NonSimpleBranching(PentagramError):
    exit_code = 5


class ChartFailure(PentagramError):
    exit_code = 6
