"""Core data model: rating scales, interaction records, datasets, and the
categorization of ratings into positive/negative/excluded polarities.

Everything here is immutable after construction and safe to share across
threads. Datasets should be built through :func:`validate_dataset` (the file
loaders and the scenario generator do), which enforces every invariant and
puts nodes and records into canonical order.
"""

from dataclasses import dataclass, field
from enum import Enum

from .errors import DatasetValidationError, InvalidRatingError, NotNormalizableError


class Polarity(Enum):
    """Outcome of categorizing one rating."""

    ALPHA = "alpha"        # positive interaction
    BETA = "beta"          # negative interaction
    EXCLUDED = "excluded"  # no-knowledge marker; contributes no evidence


@dataclass(frozen=True)
class RatingScale:
    """Integer rating range with a no-knowledge marker and a polarity threshold.

    ``threshold`` separates negative from positive ratings; a rating equal to
    the threshold counts as positive. It defaults to the midpoint of the valid
    range and can be overridden per dataset (e.g. set 3 on a 1..6 scale to
    treat "somewhat infrequently" as the boundary).
    """

    min_valid: int
    max_valid: int
    unknown_value: int = 0
    threshold: float = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.min_valid >= self.max_valid:
            raise ValueError(
                f"min_valid ({self.min_valid}) must be < max_valid ({self.max_valid})"
            )
        if self.min_valid <= self.unknown_value <= self.max_valid:
            raise ValueError(
                f"unknown_value ({self.unknown_value}) must lie outside "
                f"[{self.min_valid}, {self.max_valid}]"
            )
        if self.threshold is None:
            object.__setattr__(self, "threshold", (self.min_valid + self.max_valid) / 2)
        if not self.min_valid <= self.threshold <= self.max_valid:
            raise ValueError(
                f"threshold ({self.threshold}) must lie within "
                f"[{self.min_valid}, {self.max_valid}]"
            )

    def is_valid(self, weight: int) -> bool:
        """True for ratings in the meaningful range (unknown marker excluded)."""
        return self.min_valid <= weight <= self.max_valid

    def admits(self, weight: int) -> bool:
        """True for any weight a record may carry: valid or the unknown marker."""
        return weight == self.unknown_value or self.is_valid(weight)


@dataclass(frozen=True)
class InteractionRecord:
    """One rater->ratee rating event.

    ``seq_index`` is the ordering position of the event within its
    (rater, ratee) pair, 0 = oldest; it stands in for wall-clock time.
    """

    rater: str
    ratee: str
    weight: int
    seq_index: int = 0


@dataclass(frozen=True)
class Dataset:
    """An immutable snapshot of nodes, records, and the scale they live on.

    ``nodes`` is sorted ascending and ``records`` by (rater, ratee, seq_index);
    this canonical order makes downstream computations independent of input
    order.
    """

    nodes: tuple[str, ...]
    records: tuple[InteractionRecord, ...]
    scale: RatingScale

    def __contains__(self, node: str) -> bool:
        return node in set(self.nodes)


def node_label(index: int, count: int) -> str:
    """Canonical label for the index-th of ``count`` nodes ("n01".."n46").

    Zero padding keeps lexicographic order equal to positional order, which
    matters because ranking ties break on the identifier.
    """
    width = len(str(count))
    return f"n{index + 1:0{width}d}"


def categorize(weight: int, scale: RatingScale) -> Polarity:
    """Categorize one rating: unknown marker -> EXCLUDED, at/above the
    threshold -> ALPHA, below -> BETA.

    Raises InvalidRatingError for weights outside both the valid range and
    the unknown marker.
    """
    if weight == scale.unknown_value:
        return Polarity.EXCLUDED
    if not scale.is_valid(weight):
        raise InvalidRatingError(
            f"rating {weight} is outside [{scale.min_valid}, {scale.max_valid}] "
            f"and is not the unknown marker {scale.unknown_value}"
        )
    return Polarity.ALPHA if weight >= scale.threshold else Polarity.BETA


def normalize_weight(weight: int, scale: RatingScale) -> float:
    """Map a valid rating linearly onto [0, 1]."""
    if weight == scale.unknown_value:
        raise NotNormalizableError(
            f"the unknown marker {weight} has no position on the rating scale"
        )
    if not scale.is_valid(weight):
        raise InvalidRatingError(
            f"rating {weight} is outside [{scale.min_valid}, {scale.max_valid}]"
        )
    return (weight - scale.min_valid) / (scale.max_valid - scale.min_valid)


def validate_dataset(nodes, records, scale: RatingScale) -> Dataset:
    """Check every dataset invariant and return the canonical Dataset.

    Validation is all-or-nothing: every violation is collected and reported
    together (with the index of the offending record) before anything is
    accepted.
    """
    issues: list[str] = []

    node_list = list(nodes)
    node_set = set(node_list)
    if len(node_set) != len(node_list):
        dupes = sorted({n for n in node_list if node_list.count(n) > 1})
        issues.append(f"duplicate node identifiers: {dupes}")

    record_list = [
        r if isinstance(r, InteractionRecord) else InteractionRecord(*r) for r in records
    ]
    seen: set[tuple[str, str, int]] = set()
    for i, rec in enumerate(record_list):
        if rec.rater == rec.ratee:
            issues.append(f"record {i}: self-rating by {rec.rater!r}")
        if rec.rater not in node_set:
            issues.append(f"record {i}: rater {rec.rater!r} not in node set")
        if rec.ratee not in node_set:
            issues.append(f"record {i}: ratee {rec.ratee!r} not in node set")
        if not scale.admits(rec.weight):
            issues.append(
                f"record {i}: rating {rec.weight} is outside "
                f"[{scale.min_valid}, {scale.max_valid}] and is not the "
                f"unknown marker {scale.unknown_value}"
            )
        if rec.seq_index < 0:
            issues.append(f"record {i}: negative seq_index {rec.seq_index}")
        key = (rec.rater, rec.ratee, rec.seq_index)
        if key in seen:
            issues.append(f"record {i}: duplicate (rater, ratee, seq_index) {key}")
        seen.add(key)

    if issues:
        raise DatasetValidationError(issues)
    record_list.sort(key=lambda r: (r.rater, r.ratee, r.seq_index))
    return Dataset(
        nodes=tuple(sorted(node_list)),
        records=tuple(record_list),
        scale=scale,
    )
