"""Exception hierarchy shared by every module of the package."""


class GreenLieError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(GreenLieError, ValueError):
    pass


class NotASubspace(GreenLieError, ValueError):
    pass


class ParseError(GreenLieError, ValueError):
    """Malformed input document or scalar."""


class ScalarParseError(ParseError):
    pass


class PrecondViolation(GreenLieError, ValueError):
    pass


class InvalidStructure(GreenLieError, ValueError):
    """Raised when eager validation rejects a freshly constructed object.

    The failing :class:`~greenlie.report.Report` is attached as ``report``.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotAnAutomorphism(PrecondViolation):
    pass


class OrderMismatch(PrecondViolation):
    pass


class NotAssociative(PrecondViolation):
    pass


class PrimeMismatch(PrecondViolation):
    pass


class WellDefinednessFailure(GreenLieError):
    pass


class ConstraintNotPreserved(GreenLieError):
    pass


class ConstraintViolation(GreenLieError):
    pass


class DescentFailure(GreenLieError):
    pass


class NoBracketOnM(PrecondViolation):
    pass


class NotACocycle(GreenLieError, ValueError):
    """The cochain handed to an extension construction is not a 2-cocycle.

    ``conditions`` lists the violated compatibility/cocycle conditions by
    number (1..6 in the usual degree-2 numbering) and ``report`` holds the
    axioms the resulting (unchecked) functor breaks.
    """

    def __init__(self, message, conditions=(), report=None):
        super().__init__(message)
        self.conditions = tuple(conditions)
        self.report = report


class SectionNotCompatible(GreenLieError):
    pass


class PreimageFailure(GreenLieError):
    pass
