"""Exception hierarchy.

Every error carries a short machine-readable ``code`` which the command line
front end writes to stderr alongside the message.
"""


class UqError(Exception):
    """Base class for all errors raised by this package."""

    code = "Error"

    def as_record(self) -> dict:
        return {"error": self.code, "message": str(self)}


class QSquaredOneError(UqError, ValueError):
    code = "QSquaredOne"


class NeitherBranchError(UqError, ValueError):
    code = "NeitherBranch"


class BranchMismatchError(UqError, ValueError):
    code = "BranchMismatch"


class NonPrimitiveRootError(UqError, ValueError):
    code = "NonPrimitiveRoot"


class GaugeInconsistentError(UqError, ValueError):
    code = "GaugeInconsistent"


class ProductConstraintError(UqError, ValueError):
    code = "ProductConstraintViolated"


class QMismatchError(UqError, ValueError):
    code = "QMismatch"


class DimensionMismatchError(UqError, ValueError):
    code = "DimensionMismatch"


class SingularMatrixError(UqError, ArithmeticError):
    code = "SingularMatrix"

    def __init__(self, message: str, pivot: float):
        super().__init__(message)
        self.pivot = pivot


class ScalarDivisionError(UqError, ZeroDivisionError):
    code = "DivisionByZero"


class VariableMismatchError(UqError, ValueError):
    code = "VariableMismatch"


class EvaluationError(UqError, ValueError):
    code = "Evaluation"


class MissingRawParametersError(UqError, ValueError):
    code = "MissingRawParameters"


class NotM2Error(UqError, ValueError):
    code = "NotM2"


class InvalidInputError(UqError, ValueError):
    code = "InvalidInput"
