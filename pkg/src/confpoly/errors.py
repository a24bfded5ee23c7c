"""Exception hierarchy shared by all modules."""


class ConfpolyError(ValueError):
    """Base class for domain errors (CLI exit code 1)."""

    code = "error"

    def to_json(self):
        return {"error": self.code, "message": str(self)}


class SingularMatrix(ConfpolyError):
    code = "SingularMatrix"


class DimensionMismatch(ConfpolyError):
    code = "DimensionMismatch"


class VarSetMismatch(ConfpolyError):
    code = "VarSetMismatch"


class TooManyBases(ConfpolyError):
    code = "TooManyBases"


class DisconnectedGraph(ConfpolyError):
    code = "DisconnectedGraph"


class DuplicateLabel(ConfpolyError):
    code = "DuplicateLabel"


class NotAConfigurationForm(ConfpolyError):
    code = "NotAConfigurationForm"


class WrongRank(ConfpolyError):
    code = "WrongRank"


class NotReduced(ConfpolyError):
    code = "NotReduced"


class UnsupportedShape(ConfpolyError):
    code = "UnsupportedShape"


class ZeroParameter(ConfpolyError):
    code = "ZeroParameter"


class ZeroM(ZeroParameter):
    code = "ZeroM"


class BudgetExceeded(ConfpolyError):
    code = "BudgetExceeded"


class ParseError(ConfpolyError):
    code = "ParseError"
