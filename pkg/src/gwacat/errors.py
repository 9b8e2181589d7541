"""Exception types shared across the package."""


class GwacatError(Exception):
    """Base class for all package errors."""


class NonUnit(GwacatError):
    """Requested the inverse of an element that is not a unit."""


class NotComaximal(GwacatError):
    """A pair of ring elements does not generate the unit ideal."""


class NotPrimitiveRoot(GwacatError):
    """Scalar is not a primitive root of unity of the requested order."""


class InvalidParameters(GwacatError):
    """Constructor parameters are out of range or inconsistent."""


class TruncationNotStable(GwacatError):
    """A Verma quotient cannot be truncated at the requested dimension."""


class PrecisionInsufficient(GwacatError):
    """A truncated-completion value was consumed past its precision budget."""


class CornerNotStable(GwacatError):
    """A corner restriction does not preserve the image of the idempotent."""


class EquivalenceFailure(GwacatError):
    """A functor roundtrip identity failed on a concrete module."""


class UnsupportedRing(GwacatError):
    """Operation requires a coefficient ring of a different shape."""
