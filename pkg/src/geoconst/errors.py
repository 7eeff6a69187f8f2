"""Exception hierarchy shared by every geoconst module."""


class GeoConstError(Exception):
    """Base class for all errors raised by geoconst."""


class ParameterDomainError(GeoConstError, ValueError):
    """A parameter lies outside the domain where the quantity is defined."""


class UnsupportedOperationError(GeoConstError):
    """The operation is not defined for the given kind of space."""


class DegenerateInputError(GeoConstError, ValueError):
    """Both arguments of a ratio are zero, so the ratio is undefined."""


class PreconditionError(GeoConstError, ValueError):
    """An input violates a precondition such as lying on the unit sphere."""


class NumericFailureError(GeoConstError, ArithmeticError):
    """A functional evaluated to NaN or infinity during a search."""


class ConditionNotMetError(GeoConstError):
    """A closed form was requested outside the region where it is known to hold."""


class UnsupportedBranchError(GeoConstError):
    """A piecewise closed form was requested on a branch that is not encoded."""


class UnsupportedCombinationError(GeoConstError):
    """No closed form is known for the requested (space, constant) pair."""
