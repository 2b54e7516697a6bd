"""Exception hierarchy. Everything data-related derives from RepRankError,
which the CLI maps to exit code 2 (usage problems exit 1)."""


class RepRankError(Exception):
    """Base class for all domain and data errors raised by this package."""


class InvalidRatingError(RepRankError):
    """A rating weight outside both the valid range and the unknown marker."""


class NotNormalizableError(RepRankError):
    """Attempted to normalize the unknown-rating marker."""


class DatasetValidationError(RepRankError):
    """One or more dataset invariant violations; validation is all-or-nothing.

    ``issues`` lists every violation with the offending record index.
    """

    def __init__(self, issues: list[str]):
        self.issues = list(issues)
        super().__init__("; ".join(self.issues))


class NodeNotFoundError(RepRankError):
    """A node identifier that is not part of the dataset (or has no records
    where the operation requires some)."""


class EmptyDatasetError(RepRankError):
    """An operation that needs at least one node or one rating got none."""


class KeySetMismatchError(RepRankError):
    """Predicted and ground-truth maps cover different node sets."""


class EmptyGroundTruthError(RepRankError):
    """Ground truth requested for a dataset with no rated nodes."""


class ParseError(RepRankError):
    """A malformed input file; message carries the path and line number."""

    def __init__(self, path, line_no: int, reason: str):
        self.path = str(path)
        self.line_no = line_no
        super().__init__(f"{self.path}:{line_no}: {reason}")


class ScenarioError(RepRankError):
    """An inconsistent synthetic-scenario specification."""
