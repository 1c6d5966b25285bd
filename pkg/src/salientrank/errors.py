"""Error hierarchy shared by the library, the CLI, and the HTTP service.

Every error carries a stable machine-parsable ``code`` (used in CLI
``error[<CODE>]:`` lines and in API error envelopes) and an ``exit_code``
for the CLI contract: 1 usage, 2 validation/domain, 3 I/O or malformed files.
"""

from __future__ import annotations


class SalientrankError(Exception):
    code = "INTERNAL"
    exit_code = 2


class UsageError(SalientrankError):
    code = "USAGE"
    exit_code = 1


class DomainError(SalientrankError):
    """A well-formed request that violates a domain rule."""

    exit_code = 2


class NonSquareError(DomainError):
    code = "NON_SQUARE"


class DiagonalNotOneError(DomainError):
    code = "DIAGONAL_NOT_ONE"


class ReciprocityViolationError(DomainError):
    code = "RECIPROCITY_VIOLATION"


class OffScaleJudgmentError(DomainError):
    code = "OFF_SCALE_JUDGMENT"


class OrderOutOfRangeError(DomainError):
    code = "ORDER_OUT_OF_RANGE"


class IncompleteMatrixError(DomainError):
    """A matrix operation needed judgments that have not been entered yet."""

    code = "INCOMPLETE_MATRIX"

    def __init__(self, message: str, missing: tuple[tuple[str, str], ...] = ()):
        super().__init__(message)
        self.missing = missing


class NoConvergenceError(DomainError):
    code = "NO_CONVERGENCE"


class DuplicateIdError(DomainError):
    code = "DUPLICATE_ID"


class LabelMismatchError(DomainError):
    code = "LABEL_MISMATCH"


class MissingMatrixError(DomainError):
    code = "MISSING_MATRIX"


class MissingScoreError(DomainError):
    code = "MISSING_SCORE"


class OffScaleScoreError(DomainError):
    code = "OFF_SCALE_SCORE"


class NegativePriorityError(DomainError):
    code = "NEGATIVE_PRIORITY"


class UnknownEntityError(DomainError):
    code = "UNKNOWN_ENTITY"


class ValidationFailedError(DomainError):
    """Raised by compute() when the session validation report has errors."""

    code = "VALIDATION_FAILED"

    def __init__(self, report):
        super().__init__(f"session failed validation ({len(report.errors)} error(s))")
        self.report = report


class DocumentError(SalientrankError):
    """Problems reading or writing session documents."""

    exit_code = 3


class MalformedDocumentError(DocumentError):
    code = "MALFORMED_DOCUMENT"


class UnsupportedSchemaVersionError(DocumentError):
    code = "UNSUPPORTED_SCHEMA_VERSION"


class IoError(DocumentError):
    code = "IO_ERROR"
