"""Exception hierarchy shared by every module of the package."""


class CdimError(Exception):
    """Base class for all library errors."""

    code = "error"

    def to_dict(self):
        return {"error": self.code, "message": str(self)}


class IndeterminateValuation(CdimError, ArithmeticError):
    code = "indeterminate_valuation"


class NegativeValuation(CdimError, ValueError):
    code = "negative_valuation"


class InsufficientPrecision(CdimError, ArithmeticError):
    code = "insufficient_precision"


class DomainError(CdimError, ValueError):
    code = "domain_error"


class ZeroScale(CdimError, ValueError):
    code = "zero_scale"


class ArityMismatch(CdimError, ValueError):
    code = "arity_mismatch"


class InvalidArity(CdimError, ValueError):
    code = "invalid_arity"


class ZeroPolynomial(CdimError, ValueError):
    code = "zero_polynomial"


class BudgetExceeded(CdimError, RuntimeError):
    code = "budget_exceeded"


class NotGroebner(CdimError, ValueError):
    code = "not_groebner"


class NotHomogeneous(CdimError, ValueError):
    code = "not_homogeneous"


class NonPolynomialRange(CdimError, ValueError):
    code = "non_polynomial_range"


class ZeroHilbert(CdimError, ZeroDivisionError):
    code = "zero_hilbert"


class NotSquare(CdimError, ValueError):
    code = "not_square"


class EmptyInput(CdimError, ValueError):
    code = "empty_input"


class FullRank(CdimError, ValueError):
    code = "full_rank"


class UnsupportedMap(CdimError, ValueError):
    code = "unsupported_map"


class PrecisionGap(CdimError, ValueError):
    code = "precision_gap"


class Inconclusive(CdimError, ArithmeticError):
    code = "inconclusive"


class ParseError(CdimError, ValueError):
    """Malformed scalar or polynomial text; ``position`` is a 0-based offset."""

    code = "parse_error"

    def __init__(self, message, text="", position=0):
        super().__init__(f"{message} at position {position}")
        self.text = text
        self.position = position

    def to_dict(self):
        d = super().to_dict()
        d["position"] = self.position
        d["text"] = self.text
        return d
