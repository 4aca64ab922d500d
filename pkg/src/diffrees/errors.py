"""Exception types shared across the library."""


class DiffreesError(Exception):
    """Base class for all library errors."""


class ContextMismatchError(DiffreesError):
    """Operands live in different polynomial rings."""


class ParseError(DiffreesError):
    """Bad polynomial or case-file syntax, with position information."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class StepBudgetExceeded(DiffreesError):
    """A Groebner computation ran out of its reduction-step budget.

    This is a resource error, never a wrong answer: callers may retry
    with a larger budget.
    """


class ResolutionLengthError(DiffreesError):
    """A syzygy tower exceeded its maximum permitted length."""


class ValidationError(DiffreesError):
    """A presented algebra violates one of the input hypotheses."""

    code = "invalid"


class InhomogeneousRelationError(ValidationError):
    code = "inhomogeneous"


class RelationDegreeError(ValidationError):
    """A relation is zero or has weighted degree < 2."""

    code = "degree"


class LinearTermError(ValidationError):
    """A relation has a term of total degree <= 1, so it escapes m^2."""

    code = "linear-term"


class NotRegularSequenceError(ValidationError):
    """The relations do not form a regular sequence; carries the observed
    dimension of the quotient."""

    code = "not-regular-sequence"

    def __init__(self, message, observed_dimension=None):
        super().__init__(message)
        self.observed_dimension = observed_dimension


class DimensionTooSmallError(ValidationError):
    """The quotient ring would have dimension < 1."""

    code = "dimension"


class NotReducedError(DiffreesError):
    """Torsion/Rees constructions refuse non-reduced input algebras."""


class TestElementSearchError(DiffreesError):
    """No nonzerodivisor test element was found within the retry bound.

    Either the input is not reduced or the draw was unlucky; rerunning
    with a different seed is the suggested remedy.
    """
