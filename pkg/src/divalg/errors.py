"""Exception types shared across the package."""


class DivalgError(Exception):
    """Base class for all package-specific errors."""


class EmptyPolyhedron(DivalgError):
    pass


class UnboundedPolyhedron(DivalgError):
    pass


class NotPointed(DivalgError):
    pass


class DimensionMismatch(DivalgError):
    pass


class NotComplete(DivalgError):
    pass


class NotCartier(DivalgError):
    pass


class NotAmple(DivalgError):
    pass


class NoSections(DivalgError):
    pass


class NotASubmodule(DivalgError):
    pass


class OracleFailure(DivalgError):
    """A multiplication/action oracle could not produce a requested product."""


class OracleRangeExceeded(DivalgError):
    """A slice oracle was asked for a degree outside its supported range."""


class MissingStructure(DivalgError):
    """A dimension-only table was asked for basis-level data."""


class InsufficientRange(DivalgError):
    pass


class DegreeZeroKernel(DivalgError):
    pass


class SpanFailure(DivalgError):
    """A claimed generating set fails to span some degree slice."""

    def __init__(self, degree, message=""):
        self.degree = degree
        super().__init__(message or f"generators fail to span degree {degree}")


class ExactnessFailure(DivalgError):
    pass


class StepNotFG(DivalgError):
    """A restriction step could not be certified finitely generated within the bound."""

    def __init__(self, multiplicities, part_index, message=""):
        self.multiplicities = tuple(multiplicities)
        self.part_index = part_index
        super().__init__(
            message
            or f"restriction step at C={self.multiplicities}, S=part {part_index} "
            "still produces generators at the probe bound"
        )


class HypothesisFailure(DivalgError):
    pass


class SchemaError(DivalgError):
    """Invalid configuration or table document."""

    def __init__(self, location, message):
        self.location = location
        super().__init__(f"{location}: {message}")
