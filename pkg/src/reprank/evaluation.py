"""Evaluation harness: ground truth, MAE, precision@k, rating perturbation,
overlap/variance diagnostics, and the protocol runner that compares the
reputation ranker against both baselines on one dataset.
"""

import warnings
from dataclasses import dataclass
from statistics import pvariance
from typing import Mapping

from .baselines import BaselineScores, PageRankConfig, ndr_reputation, pagerank
from .errors import EmptyGroundTruthError, KeySetMismatchError, NodeNotFoundError
from .model import Dataset, InteractionRecord, validate_dataset
from .reputation import (
    ALL_HISTORY,
    HistoryWindow,
    ReputationScore,
    dynamic_profile,
    mean_pair_values,
    rank_all,
)

Ranked = list[ReputationScore] | BaselineScores


@dataclass
class GroundTruth:
    """Per-node normalized mean incoming rating, plus the derived top-k set."""

    values: dict[str, float]
    top_k: tuple[str, ...]


def ground_truth(dataset: Dataset, k: int) -> GroundTruth:
    """Real value of each rated node = normalized mean of its valid incoming
    ratings; the top-k set holds the k highest (ties broken by identifier)."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    unknown = dataset.scale.unknown_value
    incoming: dict[str, list[int]] = {}
    for rec in dataset.records:
        if rec.weight != unknown:
            incoming.setdefault(rec.ratee, []).append(rec.weight)
    if not incoming:
        raise EmptyGroundTruthError("dataset has no valid ratings")
    span = dataset.scale.max_valid - dataset.scale.min_valid
    values = {
        node: (sum(ws) / len(ws) - dataset.scale.min_valid) / span
        for node, ws in incoming.items()
    }
    ordered = sorted(values.items(), key=lambda kv: (-kv[1], kv[0]))
    top = tuple(node for node, _ in ordered[: min(k, len(ordered))])
    return GroundTruth(values=values, top_k=top)


def mae(predicted: Mapping[str, float], truth: "GroundTruth | Mapping[str, float]") -> float:
    """Mean absolute error between two node->value maps over a shared key set."""
    truth_map = truth.values if isinstance(truth, GroundTruth) else truth
    if set(predicted) != set(truth_map):
        diff = sorted(set(predicted) ^ set(truth_map))
        raise KeySetMismatchError(f"predicted/truth key sets differ on: {diff}")
    if not predicted:
        return 0.0
    return sum(abs(predicted[n] - truth_map[n]) for n in predicted) / len(predicted)


def _ordered_nodes_scores(ranked: Ranked) -> list[tuple[str, float]]:
    if isinstance(ranked, BaselineScores):
        return ranked.ordered()
    return [(s.node, s.reputation) for s in ranked]


def top_nodes(ranked: Ranked, k: int) -> list[str]:
    """First k node identifiers of a ranking (reputation or baseline scores)."""
    return [node for node, _ in _ordered_nodes_scores(ranked)[:k]]


def precision_at_k(ranked: Ranked, truth: GroundTruth, k: int) -> float:
    """Fraction of the ranking's top k that appears in the truth top-k set.

    ``k`` larger than the ranking is clamped (with a warning); pass the same
    k the ground truth was built with.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    size = len(_ordered_nodes_scores(ranked))
    if k > size:
        warnings.warn(f"k={k} exceeds the {size}-node ranking; clamping", stacklevel=2)
        k = size
    top = top_nodes(ranked, k)
    return len(set(top) & set(truth.top_k)) / k


def perturb_flip_incoming(dataset: Dataset, target: str) -> Dataset:
    """Reflect every valid incoming rating of ``target`` across the scale
    (w -> min + max - w); unknown-marker records and all other records are
    untouched. Applying the perturbation twice restores the dataset."""
    if target not in set(dataset.nodes):
        raise NodeNotFoundError(f"node {target!r} is not in the dataset")
    scale = dataset.scale
    flip_sum = scale.min_valid + scale.max_valid
    flipped = 0
    records = []
    for rec in dataset.records:
        if rec.ratee == target and rec.weight != scale.unknown_value:
            records.append(
                InteractionRecord(rec.rater, rec.ratee, flip_sum - rec.weight, rec.seq_index)
            )
            flipped += 1
        else:
            records.append(rec)
    if flipped == 0:
        raise NodeNotFoundError(f"node {target!r} has no valid incoming ratings")
    return validate_dataset(dataset.nodes, records, scale)


def overlap(list_a: list[str], list_b: list[str]) -> float:
    """Fraction of shared members between two equal-length node lists."""
    if len(list_a) != len(list_b):
        raise ValueError(f"lists differ in length: {len(list_a)} vs {len(list_b)}")
    if not list_a:
        return 1.0
    return len(set(list_a) & set(list_b)) / len(list_a)


def variance_of_top(ranked: Ranked, k: int) -> float:
    """Population variance of the top-k scores of a ranking."""
    scores = [score for _, score in _ordered_nodes_scores(ranked)[:k]]
    if len(scores) < k:
        raise ValueError(f"ranking has {len(scores)} entries, fewer than k={k}")
    return pvariance(scores)


def minmax_normalize(scores: Mapping[str, float]) -> dict[str, float]:
    """Rescale a score map onto [0, 1]; a constant map collapses to 0.5."""
    if not scores:
        return {}
    lo, hi = min(scores.values()), max(scores.values())
    if hi == lo:
        return {node: 0.5 for node in scores}
    return {node: (value - lo) / (hi - lo) for node, value in scores.items()}


@dataclass(frozen=True)
class ProtocolConfig:
    """Knobs for one evaluation run; the defaults reproduce the standard
    protocol (k=10, full history, top-3 variance, no perturbation)."""

    k: int = 10
    window: HistoryWindow = ALL_HISTORY
    pagerank: PageRankConfig = PageRankConfig()
    perturb_target: str | None = None
    history_windows: tuple[HistoryWindow, ...] = (
        ALL_HISTORY,
        HistoryWindow.latest(1),
        HistoryWindow.latest(3),
        HistoryWindow.latest(5),
        HistoryWindow.latest(7),
    )
    top_variance_k: int = 3
    dataset_id: str = ""
    seed: int | None = None


@dataclass
class EvaluationReport:
    """Results of one method on one dataset, plus run metadata."""

    method: str
    mae: float
    precision_at_k: float
    k: int
    ranking: tuple[tuple[str, float], ...]
    dataset_id: str = ""
    window: str = "all"
    threshold: float = 0.0
    seed: int | None = None
    overlap_fraction: float | None = None
    top_k_variance: float | None = None
    converged: bool = True
    degenerate: bool = False
    argmax_before: str | None = None
    argmax_after: str | None = None
    dynamic: tuple[tuple[str, float], ...] | None = None


def _safe_top_variance(ranked: Ranked, k: int) -> float | None:
    try:
        return variance_of_top(ranked, k)
    except ValueError:
        return None


def run_protocol(dataset: Dataset, config: ProtocolConfig = ProtocolConfig()) -> list[EvaluationReport]:
    """Run the full comparison on one dataset and return one report per
    method (eer, pagerank, ndr).

    Covers the ranking-match test (MAE and precision@k against the normalized
    mean-rating ground truth), the categorization diagnostics for the
    reputation ranker (top-k overlap between the both-polarity and
    positive-only rankings, top-k score variance), the optional weight-flip
    perturbation (per-method argmax before/after), and the history-window
    profile of the top-ranked node. Deterministic given dataset and config.
    """
    truth = ground_truth(dataset, config.k)
    rated = set(truth.values)

    eer_ranking = rank_all(dataset, config.window)
    bl1 = pagerank(dataset, config.pagerank)
    bl2 = ndr_reputation(dataset)

    eer_pred = mean_pair_values(dataset, config.window)
    bl1_pred = minmax_normalize({n: bl1.scores[n] for n in rated})
    bl2_pred = minmax_normalize({n: bl2.scores[n] for n in rated})

    k_top = min(config.k, len(dataset.nodes))
    positive_ranking = rank_all(dataset, config.window, positive_only=True)
    eer_overlap = overlap(top_nodes(eer_ranking, k_top), top_nodes(positive_ranking, k_top))

    argmax: dict[str, tuple[str | None, str | None]] = {
        "eer": (None, None),
        "pagerank": (None, None),
        "ndr": (None, None),
    }
    if config.perturb_target is not None:
        perturbed = perturb_flip_incoming(dataset, config.perturb_target)
        argmax["eer"] = (
            eer_ranking[0].node,
            rank_all(perturbed, config.window)[0].node,
        )
        argmax["pagerank"] = (
            bl1.ordered()[0][0],
            pagerank(perturbed, config.pagerank).ordered()[0][0],
        )
        argmax["ndr"] = (
            bl2.ordered()[0][0],
            ndr_reputation(perturbed).ordered()[0][0],
        )

    top_node = eer_ranking[0]
    dynamic: tuple[tuple[str, float], ...] | None = None
    if config.history_windows and top_node.contributing_raters > 0:
        profile = dynamic_profile(top_node.node, dataset, list(config.history_windows))
        dynamic = tuple((str(w), score.reputation) for w, score in profile)

    meta = dict(
        k=config.k,
        dataset_id=config.dataset_id,
        window=str(config.window),
        threshold=dataset.scale.threshold,
        seed=config.seed,
    )
    reports = [
        EvaluationReport(
            method="eer",
            mae=mae(eer_pred, truth),
            precision_at_k=precision_at_k(eer_ranking, truth, k_top),
            ranking=tuple((s.node, s.reputation) for s in eer_ranking),
            overlap_fraction=eer_overlap,
            top_k_variance=_safe_top_variance(eer_ranking, config.top_variance_k),
            argmax_before=argmax["eer"][0],
            argmax_after=argmax["eer"][1],
            dynamic=dynamic,
            **meta,
        ),
        EvaluationReport(
            method="pagerank",
            mae=mae(bl1_pred, truth),
            precision_at_k=precision_at_k(bl1, truth, k_top),
            ranking=tuple(bl1.ordered()),
            top_k_variance=_safe_top_variance(bl1, config.top_variance_k),
            converged=bl1.converged,
            argmax_before=argmax["pagerank"][0],
            argmax_after=argmax["pagerank"][1],
            **meta,
        ),
        EvaluationReport(
            method="ndr",
            mae=mae(bl2_pred, truth),
            precision_at_k=precision_at_k(bl2, truth, k_top),
            ranking=tuple(bl2.ordered()),
            top_k_variance=_safe_top_variance(bl2, config.top_variance_k),
            degenerate=bl2.degenerate,
            argmax_before=argmax["ndr"][0],
            argmax_after=argmax["ndr"][1],
            **meta,
        ),
    ]
    return reports
