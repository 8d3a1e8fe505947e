"""Exception hierarchy shared by all modules."""


class AlgebraError(Exception):
    pass


class AlgebraMismatch(AlgebraError, TypeError):
    """Operands live in different algebras."""


class NotInvertible(AlgebraError, ArithmeticError):
    pass


class LeadingCoefficientNotInvertible(NotInvertible):
    pass


class LiteralError(AlgebraError, ValueError):
    """Malformed element or algebra literal."""


class MonomialSyntaxError(AlgebraError, ValueError):
    def __init__(self, message, position=None, text=None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class UnknownConstant(MonomialSyntaxError):
    pass


class NonUnitCoefficient(MonomialSyntaxError):
    pass


class ConstantWordError(MonomialSyntaxError):
    """The word has no indeterminate letter left after canonicalization."""


class TransformFailed(AlgebraError):
    pass


class TruncationError(AlgebraError, IndexError):
    """A coefficient was requested beyond the known truncation window."""


class InsufficientPoints(AlgebraError, ValueError):
    pass


class RootSearchUnsupported(AlgebraError):
    pass


class BudgetExceeded(AlgebraError):
    """A configured enumeration or size cap would be exceeded."""


class EnumerationCapExceeded(BudgetExceeded):
    pass
