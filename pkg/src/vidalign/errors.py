"""Exception hierarchy.

Everything raised on bad user input derives from InputError so the CLI can
map it to exit code 2; anything else that escapes is a computational failure
(exit code 1).
"""


class VidalignError(Exception):
    pass


class InputError(VidalignError):
    """Invalid input data, schema, or precondition violation."""


class AllMissing(InputError):
    """A track has no frame with the required observation."""


class DegenerateBox(InputError):
    """A box with non-positive width or height where a ratio is needed."""


class LengthTooShort(InputError):
    """A sequence is shorter than the operation requires."""


class EmptyIntersection(InputError):
    """A box does not overlap the frame."""


class LengthMismatch(InputError):
    """Two per-frame structures disagree on frame count."""


class BadWindow(InputError):
    """Smoothing window is not a positive odd integer."""


class DimMismatch(InputError):
    """Two series disagree on feature width."""


class PhaseCountMismatch(InputError):
    """Two annotations disagree on phase count."""


class EndpointMismatch(InputError):
    """Predicted and ground-truth paths do not share endpoints."""


class InvalidPath(InputError):
    """A warp path violates the endpoint/step contract."""


class InvalidAnnotation(InputError):
    """A phase annotation violates the labeling contract."""


class EmptyTrainSet(InputError):
    """Classifier called with no training frames."""


class TooFewVideos(InputError):
    """Fewer videos than cross-validation folds."""


class TooShort(InputError):
    """Series too short for the wait-phase construction."""


class FormatError(InputError):
    """A file failed schema validation; carries path and line context."""

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}: " if line is None else f"{path}:{line}: "
        super().__init__(f"{where}{message}")
