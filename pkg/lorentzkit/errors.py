"""
lorentzkit/errors.py

Exception hierarchy. Every error derives from LorentzKitError and from the
closest builtin, so callers may catch either.
"""


class LorentzKitError(Exception):
    """Base class for every error raised by lorentzkit."""


class DimensionMismatchError(LorentzKitError, ValueError):
    pass


class VarSpaceError(LorentzKitError, ValueError):
    """Position-space and momentum-space data were mixed."""


class ScalarDivisionError(LorentzKitError, ZeroDivisionError):
    pass


class NonHomogeneousError(LorentzKitError, ValueError):
    pass


class NotInSpanError(LorentzKitError, ValueError):
    pass


class ParameterError(LorentzKitError, ValueError):
    pass


class DeterminantError(LorentzKitError, ValueError):
    pass


class ConditionError(LorentzKitError, ValueError):
    """A right-hand side failed the rotation-subspace conditions of the boost solver."""


class InvarianceError(LorentzKitError, ValueError):
    def __init__(self, message, generator, degree):
        super().__init__(message)
        self.generator = generator
        self.degree = degree


class JetConditionError(LorentzKitError, ValueError):
    def __init__(self, message, kappa):
        super().__init__(message)
        self.kappa = tuple(kappa)


class DivisionPreconditionError(LorentzKitError, ValueError):
    def __init__(self, message, monomial):
        super().__init__(message)
        self.monomial = tuple(monomial)


class InconsistentSystemError(LorentzKitError, ValueError):
    def __init__(self, message, grade):
        super().__init__(message)
        self.grade = grade


class ParseError(LorentzKitError, ValueError):
    def __init__(self, message, line, column):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column
