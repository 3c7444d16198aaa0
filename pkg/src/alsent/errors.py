"""Exception types shared across the workbench."""


class WorkbenchError(Exception):
    """Base class for all errors raised by this package."""


class SpecError(WorkbenchError):
    """A model or run specification is malformed."""


class ShapeError(WorkbenchError):
    """Operands have incompatible shapes."""


class NumericalError(WorkbenchError):
    """A computation produced a non-finite value."""


class Diverged(WorkbenchError):
    """Training produced a non-finite loss."""

    def __init__(self, epoch: int, message: str = ""):
        self.epoch = epoch
        super().__init__(message or f"loss became non-finite at epoch {epoch}")


class DegenerateBatch(WorkbenchError):
    """A batch is too small for the requested operation."""


class EmptyCorpus(WorkbenchError):
    """No samples were provided where at least one is required."""


class EmptyTestSet(WorkbenchError):
    """Evaluation was requested against zero samples."""


class DatasetTooSmall(WorkbenchError):
    """The dataset cannot be split into non-degenerate parts."""


class DatasetError(WorkbenchError):
    """A dataset file is malformed (bad row, duplicate id, unknown label)."""


class InvalidDistribution(WorkbenchError):
    """A probability vector has negative entries or does not sum to one."""


class AnnotationError(WorkbenchError):
    """Base class for annotator failures."""


class AuthError(AnnotationError):
    """API credentials are missing or rejected."""


class TransportError(AnnotationError):
    """The annotation endpoint could not be reached or kept failing."""


class UnparseableResponse(AnnotationError):
    """An annotator reply could not be mapped onto the label set."""

    def __init__(self, message: str = "", raw_response: str | None = None):
        self.raw_response = raw_response
        super().__init__(message or f"unparseable response: {raw_response!r}")


class MissingGold(AnnotationError):
    """A gold label was requested for a sample that has none."""


class Cancelled(AnnotationError):
    """A pending annotation request was abandoned before resolution."""


class UnknownTask(AnnotationError):
    """No pending task matches the given task id (wrong or stale)."""


class InvalidLabel(AnnotationError):
    """A submitted label is not in the task's label set."""


class RunNotFound(WorkbenchError):
    """No stored run record matches the requested id."""
