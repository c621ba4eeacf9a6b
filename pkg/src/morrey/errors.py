"""Exception hierarchy shared by every module."""


class MorreyError(ValueError):
    """Base class for all library errors."""


class InputTooLarge(MorreyError):
    pass


class EmptySequence(MorreyError):
    pass


class DimensionMismatch(MorreyError):
    pass


class Divergent(MorreyError):
    """A ball integral is infinite."""


class Unbounded(MorreyError):
    """Ball values grow without bound, so the norm is infinite."""


class IncompatiblePieces(MorreyError):
    pass


class BothZero(MorreyError):
    pass


class ZeroVector(MorreyError):
    pass


class EqualVectors(MorreyError):
    pass


class DegenerateParams(MorreyError):
    pass


class ThresholdViolated(MorreyError):
    pass


class BadRange(MorreyError):
    pass


class MalformedInput(MorreyError):
    pass
