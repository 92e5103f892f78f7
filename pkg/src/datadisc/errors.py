"""Exception hierarchy shared by all datadisc modules."""


class DatadiscError(Exception):
    """Base class for every error raised by this package."""


class ParseError(DatadiscError):
    """Malformed polynomial or model text.

    ``position`` is the 0-based character offset into the offending string,
    or None when the error is not tied to a single character.
    """

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class UnknownVariable(ParseError):
    """A name in the input does not belong to the target ring."""

    def __init__(self, name: str, position: int | None = None):
        self.name = name
        super().__init__(f"unknown variable {name!r}", position)


class VariableOutOfRange(ParseError):
    """A model invariant mentions a variable outside the declared p-block."""


class NonHomogeneousInvariant(DatadiscError):
    """A model invariant is not homogeneous."""


class MissingAssignment(DatadiscError):
    """substitute() was called without an image for some variable."""


class ZeroPolynomial(DatadiscError):
    """The operation is undefined for the zero polynomial."""


class ResourceLimit(DatadiscError):
    """A computation exceeded its pair-count or wall-clock budget."""


class NotZeroDimensional(DatadiscError):
    """The ideal has infinitely many solutions over the unknowns."""


class ZeroIdeal(DatadiscError):
    """An elimination came back empty: the projection is dominant."""


class NotPrincipal(DatadiscError):
    """Expected a principal elimination ideal."""


class RequiresDecomposition(DatadiscError):
    """Non-principal elimination ideal: would need an equidimensional
    radical decomposition, which is outside this kernel's scope."""


class UnluckyRandomness(DatadiscError):
    """Random choices kept hitting a measure-zero bad set.

    Carries the master seed so the run can be reproduced or re-seeded.
    """

    def __init__(self, message: str, seed: int | None = None):
        self.seed = seed
        if seed is not None:
            message = f"{message} (seed {seed})"
        super().__init__(message)


class SingularSampleMatrix(UnluckyRandomness):
    """Interpolation sample matrix was exactly singular."""


class DegreeDrop(DatadiscError):
    """A specialized eliminant had lower degree than the expected one."""


class NotShapePosition(DatadiscError):
    """Lex basis did not reach shape position after the allowed retries."""


class EndpointRoot(DatadiscError):
    """A Sturm interval endpoint is itself a root."""
