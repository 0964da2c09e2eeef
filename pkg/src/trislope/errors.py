"""Exception hierarchy for the trislope pipeline.

Every stage failure carries a stage tag so the CLI can report which part
of the pipeline rejected the input or detected an internal invariant breach.
"""


class TrislopeError(Exception):
    """Base class for all trislope errors."""

    stage = "general"


class ParseError(TrislopeError):
    stage = "parse"


class IoError(TrislopeError):
    stage = "io"


class ValidationError(TrislopeError):
    stage = "validate"


class NotSimple(ValidationError):
    pass


class NotTriangulation(ValidationError):
    pass


class BadOuterFace(ValidationError):
    pass


class BadAnchors(BadOuterFace):
    pass


class EulerViolation(ValidationError):
    pass


class NotEulerian(ValidationError):
    stage = "eulerian-check"


class OuterFaceNotAllowed(ValidationError):
    stage = "glue"


class NotADisk(ValidationError):
    stage = "extract"


class ResultNotSimple(ValidationError):
    stage = "extract"


class ResultNotEulerian(ValidationError):
    stage = "extract"


class NoContractiblePair(TrislopeError):
    """Signals an internal bug: a zero face always has a contractible pair."""

    stage = "contract"


class SingularMatrix(TrislopeError):
    """The size system matrix is singular, which breaks a core guarantee."""

    stage = "solve"


class MixedSigns(TrislopeError):
    stage = "matching-oracle"


class TooLarge(TrislopeError):
    stage = "matching-oracle"


class SignPatternViolation(TrislopeError):
    """Positive faces around an inner vertex are not consecutive."""

    stage = "scheme"


class ZeroEdgeLength(TrislopeError):
    stage = "scheme"


class DoubleMerge(TrislopeError):
    stage = "scheme"


class InconsistentPropagation(TrislopeError):
    """Coordinate propagation assigned two values to the same node."""

    stage = "scheme"


class UnclassifiablePoint(TrislopeError):
    stage = "classify"


class DegenerateSegment(TrislopeError):
    stage = "verify"


class RecursionOnNonEulerianSubgraph(TrislopeError):
    stage = "resolve"


class BudgetExhausted(TrislopeError):
    stage = "resolve"


class ChordCaseUnmatched(TrislopeError):
    stage = "resolve"
