"""Comparison rankers: a PageRank-style graph baseline and a normal-distribution
reputation baseline.

The graph baseline defaults to structure-only (unweighted) transitions, so any
change of rating weights that leaves the edge set intact leaves its scores
intact too — negative referrals are invisible to it. A weighted variant is
available behind a flag.
"""

import math
import statistics
from dataclasses import dataclass

import numpy as np

from .model import Dataset


@dataclass(frozen=True)
class PageRankConfig:
    damping: float = 0.85
    tolerance: float = 1e-8      # L1 change per iteration
    max_iterations: int = 200
    weighted: bool = False

    def __post_init__(self):
        if not 0.0 < self.damping < 1.0:
            raise ValueError(f"damping must be in (0, 1), got {self.damping}")
        if self.tolerance <= 0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be >= 1, got {self.max_iterations}")


@dataclass
class BaselineScores:
    """Node -> score map plus status flags.

    ``converged`` is False when power iteration hit its iteration cap;
    ``degenerate`` is True when the normal-distribution baseline had no
    variance (all rated nodes scored 0.5).
    """

    scores: dict[str, float]
    converged: bool = True
    degenerate: bool = False

    def ordered(self) -> list[tuple[str, float]]:
        """Descending by score, ties broken by ascending node identifier."""
        return sorted(self.scores.items(), key=lambda kv: (-kv[1], kv[0]))

    def top(self, k: int) -> list[str]:
        return [node for node, _ in self.ordered()[:k]]


def standard_normal_cdf(x: float) -> float:
    """CDF of the standard normal distribution (machine precision via erf)."""
    return 0.5 * (1.0 + math.erf(x / math.sqrt(2.0)))


def pagerank(dataset: Dataset, config: PageRankConfig = PageRankConfig()) -> BaselineScores:
    """Power-iteration PageRank over the directed rating graph.

    An edge rater->ratee exists when the pair has at least one non-excluded
    record. Unweighted mode uses edge presence only; weighted mode uses the
    pair's mean raw rating as transition mass before row normalization.
    Dangling nodes redistribute uniformly. Scores always sum to 1.
    """
    nodes = list(dataset.nodes)
    if not nodes:
        return BaselineScores(scores={}, converged=True)
    index = {node: i for i, node in enumerate(nodes)}
    m = len(nodes)

    mass: dict[tuple[int, int], list[int]] = {}
    for rec in dataset.records:
        if rec.weight == dataset.scale.unknown_value:
            continue
        mass.setdefault((index[rec.rater], index[rec.ratee]), []).append(rec.weight)

    adj = np.zeros((m, m))
    for (i, j), weights in mass.items():
        adj[i, j] = (sum(weights) / len(weights)) if config.weighted else 1.0

    out_sum = adj.sum(axis=1)
    dangling = out_sum == 0.0
    transition = np.zeros_like(adj)
    nonzero = ~dangling
    transition[nonzero] = adj[nonzero] / out_sum[nonzero, None]

    d = config.damping
    x = np.full(m, 1.0 / m)
    converged = False
    for _ in range(config.max_iterations):
        dangling_mass = x[dangling].sum()
        x_next = d * (x @ transition + dangling_mass / m) + (1.0 - d) / m
        if np.abs(x_next - x).sum() < config.tolerance:
            x = x_next
            converged = True
            break
        x = x_next

    return BaselineScores(
        scores={node: float(x[index[node]]) for node in nodes},
        converged=converged,
    )


def ndr_reputation(dataset: Dataset) -> BaselineScores:
    """Normal-distribution reputation: z-score each node's mean incoming
    rating against the population of rated-node means and take the standard
    normal CDF.

    Nodes with no valid incoming ratings score 0. When fewer than two nodes
    are rated, or the population of means has zero variance, all rated nodes
    score 0.5 and the result is flagged degenerate.
    """
    unknown = dataset.scale.unknown_value
    ratings: dict[str, list[int]] = {}
    for rec in dataset.records:
        if rec.weight != unknown:
            ratings.setdefault(rec.ratee, []).append(rec.weight)

    scores = {node: 0.0 for node in dataset.nodes}
    means = {node: statistics.mean(vals) for node, vals in ratings.items()}
    if len(means) < 2:
        for node in means:
            scores[node] = 0.5
        return BaselineScores(scores=scores, degenerate=True)

    mu = statistics.mean(means.values())
    sigma = statistics.stdev(means.values())
    if sigma == 0.0:
        for node in means:
            scores[node] = 0.5
        return BaselineScores(scores=scores, degenerate=True)

    for node, mean_rating in means.items():
        scores[node] = standard_normal_cdf((mean_rating - mu) / sigma)
    return BaselineScores(scores=scores, degenerate=False)
