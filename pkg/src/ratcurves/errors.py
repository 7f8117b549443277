"""Exception hierarchy.

Every error raised by the library derives from :class:`RatCurvesError`.  The
three intermediate classes group errors by how the command line reports them:
bad input files, violated preconditions, and internal invariant breaches.
"""


class RatCurvesError(Exception):
    """Base class for all library errors."""


class ParseError(RatCurvesError):
    """Malformed curve, polynomial or splitting document."""


class PreconditionError(RatCurvesError):
    """An operation was called outside its documented domain."""


class InvariantError(RatCurvesError):
    """A computed object contradicts a proven identity (arithmetic bug)."""


# exact-arith
class DegreeMismatch(PreconditionError):
    pass


class BothZero(PreconditionError):
    pass


class UnsupportedField(PreconditionError):
    pass


class SingularMatrix(PreconditionError):
    pass


class BadCharacteristic(PreconditionError):
    """A required integer constant vanishes in the chosen prime field."""


# syzygy
class DegenerateInput(PreconditionError):
    pass


class NonFreeProfile(InvariantError):
    pass


class LemmaViolation(InvariantError):
    pass


# construct
class AssumptionViolated(PreconditionError):
    pass


class BadDelta(PreconditionError):
    pass


class DegreeTooSmall(PreconditionError):
    pass


class OrderingViolated(PreconditionError):
    pass


class ResampleExhausted(PreconditionError):
    pass


class HypothesisViolated(PreconditionError):
    pass


class NotDecreasing(PreconditionError):
    pass


class Ramified(PreconditionError):
    pass


class IndexOutOfRange(PreconditionError):
    pass


class OddK(PreconditionError):
    pass


# strata
class FieldTooLarge(PreconditionError):
    pass


class DegenerateConic(PreconditionError):
    pass


class NotARelation(PreconditionError):
    """A tuple passed as a relation does not annihilate the Jacobian."""
