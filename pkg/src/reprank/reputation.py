"""Beta-posterior reputation engine.

For each (rater, ratee) pair the positive/negative interaction counts (p, n)
feed the posterior mean (p + 1) / (p + n + 2); a node's reputation is the sum
of those means over all raters that contributed at least one categorized
interaction. History windows restrict the counts to the latest k events of
each pair.

All functions are pure over an immutable Dataset snapshot; computing nodes in
any order (or in parallel) yields the same ranking.
"""

from dataclasses import dataclass

from .errors import EmptyDatasetError, NodeNotFoundError
from .model import Dataset, InteractionRecord, Polarity, RatingScale, categorize


@dataclass(frozen=True)
class PairCounts:
    """Positive (p) and negative (n) interaction tallies for one rater pair."""

    p: int
    n: int

    def __post_init__(self):
        if self.p < 0 or self.n < 0:
            raise ValueError(f"counts must be non-negative, got p={self.p} n={self.n}")


@dataclass(frozen=True)
class HistoryWindow:
    """Either the full pair history (k is None) or only the latest k events."""

    k: int | None = None

    def __post_init__(self):
        if self.k is not None and self.k < 1:
            raise ValueError(f"window size must be >= 1, got {self.k}")

    @classmethod
    def all(cls) -> "HistoryWindow":
        return cls(None)

    @classmethod
    def latest(cls, k: int) -> "HistoryWindow":
        return cls(k)

    @classmethod
    def parse(cls, text: str) -> "HistoryWindow":
        """Parse 'all' or 'latest:<k>' (as accepted by the CLI)."""
        if text == "all":
            return cls.all()
        if text.startswith("latest:"):
            try:
                k = int(text.split(":", 1)[1])
            except ValueError:
                raise ValueError(f"bad window {text!r}: k must be an integer") from None
            if k < 1:
                raise ValueError(f"bad window {text!r}: k must be >= 1")
            return cls.latest(k)
        raise ValueError(f"bad window {text!r}: expected 'all' or 'latest:<k>'")

    def __str__(self) -> str:
        return "all" if self.k is None else f"latest:{self.k}"


ALL_HISTORY = HistoryWindow.all()


@dataclass(frozen=True)
class ReputationScore:
    """Aggregate reputation of one node: the sum of per-rater posterior means.

    ``reputation`` is strictly below ``contributing_raters`` (each mean < 1)
    and exactly 0.0 when no rater contributed evidence.
    """

    node: str
    reputation: float
    contributing_raters: int


def apply_window(
    records: list[InteractionRecord], window: HistoryWindow
) -> list[InteractionRecord]:
    """Restrict one pair's records to the window, preserving seq_index order.

    With Latest(k), the k records with the highest seq_index survive (all of
    them when fewer exist).
    """
    ordered = sorted(records, key=lambda r: r.seq_index)
    if window.k is None:
        return ordered
    return ordered[-window.k :]


def pair_counts(
    records: list[InteractionRecord],
    scale: RatingScale,
    window: HistoryWindow = ALL_HISTORY,
) -> PairCounts:
    """Tally positive/negative interactions of one pair within the window.

    Excluded (no-knowledge) records count toward neither tally.
    """
    p = n = 0
    for rec in apply_window(records, window):
        polarity = categorize(rec.weight, scale)
        if polarity is Polarity.ALPHA:
            p += 1
        elif polarity is Polarity.BETA:
            n += 1
    return PairCounts(p, n)


def expected_value(counts: PairCounts) -> float:
    """Posterior mean (p + 1) / (p + n + 2) of the pair's interaction outcome.

    With no evidence this is the uniform prior 0.5; it always lies strictly
    inside (0, 1).
    """
    return (counts.p + 1) / (counts.p + counts.n + 2)


def incoming_pairs(dataset: Dataset) -> dict[str, dict[str, list[InteractionRecord]]]:
    """Group records as ratee -> rater -> records (seq_index ascending)."""
    grouped: dict[str, dict[str, list[InteractionRecord]]] = {}
    for rec in dataset.records:  # canonical order keeps seq ascending per pair
        grouped.setdefault(rec.ratee, {}).setdefault(rec.rater, []).append(rec)
    return grouped


def _score_node(
    node: str,
    raters: dict[str, list[InteractionRecord]],
    scale: RatingScale,
    window: HistoryWindow,
    positive_only: bool,
) -> ReputationScore:
    total = 0.0
    contributing = 0
    for records in raters.values():
        counts = pair_counts(records, scale, window)
        if positive_only:
            counts = PairCounts(counts.p, 0)
        if counts.p + counts.n == 0:
            continue
        total += expected_value(counts)
        contributing += 1
    return ReputationScore(node=node, reputation=total, contributing_raters=contributing)


def node_reputation(
    node: str,
    dataset: Dataset,
    window: HistoryWindow = ALL_HISTORY,
    positive_only: bool = False,
) -> ReputationScore:
    """Reputation of one node: sum of per-rater posterior means.

    Only raters with at least one non-excluded windowed interaction toward
    the node contribute; a node with no incoming evidence scores 0.0.
    With ``positive_only`` negative interactions are ignored entirely (a rater
    with no positive interactions stops contributing) — the single-polarity
    ranking mode used by the categorization experiment.
    """
    if node not in set(dataset.nodes):
        raise NodeNotFoundError(f"node {node!r} is not in the dataset")
    raters = incoming_pairs(dataset).get(node, {})
    return _score_node(node, raters, dataset.scale, window, positive_only)


def rank_all(
    dataset: Dataset,
    window: HistoryWindow = ALL_HISTORY,
    positive_only: bool = False,
) -> list[ReputationScore]:
    """Score every node and sort descending by reputation (ties by ascending
    node identifier). The head of the list is the expert."""
    if not dataset.nodes:
        raise EmptyDatasetError("cannot rank an empty node set")
    grouped = incoming_pairs(dataset)
    scores = [
        _score_node(node, grouped.get(node, {}), dataset.scale, window, positive_only)
        for node in dataset.nodes
    ]
    scores.sort(key=lambda s: (-s.reputation, s.node))
    return scores


def dynamic_profile(
    node: str,
    dataset: Dataset,
    windows: list[HistoryWindow],
) -> list[tuple[HistoryWindow, ReputationScore]]:
    """Reputation of one node under each requested history window.

    For a node rated by a single rater this traces the pair's posterior mean
    as the history grows, which is how dynamic behavior is profiled.
    """
    if node not in set(dataset.nodes):
        raise NodeNotFoundError(f"node {node!r} is not in the dataset")
    if not any(rec.ratee == node for rec in dataset.records):
        raise NodeNotFoundError(f"node {node!r} has no incoming records")
    return [(w, node_reputation(node, dataset, w)) for w in windows]


def mean_pair_values(
    dataset: Dataset, window: HistoryWindow = ALL_HISTORY
) -> dict[str, float]:
    """Per-node mean of the per-rater posterior means (reputation divided by
    contributing raters), for nodes with at least one contributing rater.

    This is the unit-interval prediction the evaluation harness compares
    against ground truth; the plain reputation sum still drives the ranking.
    """
    out: dict[str, float] = {}
    for score in rank_all(dataset, window):
        if score.contributing_raters > 0:
            out[score.node] = score.reputation / score.contributing_raters
    return out
