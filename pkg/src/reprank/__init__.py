"""Expert ranking from rated peer interactions.

Each (rater, ratee) pair's positive/negative interaction counts feed a
beta-posterior mean (p + 1) / (p + n + 2); summing those means over a node's
raters gives its reputation, and the node with the maximum sum is the expert.
History windows restrict the counts to each pair's latest k events. Graph
(PageRank-style) and normal-distribution baselines plus an evaluation
harness round out the package.
"""

from .baselines import BaselineScores, PageRankConfig, ndr_reputation, pagerank, standard_normal_cdf
from .errors import (
    DatasetValidationError,
    EmptyDatasetError,
    EmptyGroundTruthError,
    InvalidRatingError,
    KeySetMismatchError,
    NodeNotFoundError,
    NotNormalizableError,
    ParseError,
    RepRankError,
    ScenarioError,
)
from .evaluation import (
    EvaluationReport,
    GroundTruth,
    ProtocolConfig,
    ground_truth,
    mae,
    minmax_normalize,
    overlap,
    perturb_flip_incoming,
    precision_at_k,
    run_protocol,
    top_nodes,
    variance_of_top,
)
from .generate import (
    DEFAULT_SCALE,
    BaseDistribution,
    CollusionRing,
    RatingCampaign,
    ScenarioSpec,
    generate_scenario,
    load_scenario_spec,
)
from .io import (
    load_edge_csv,
    load_matrix,
    write_edge_csv,
    write_matrix,
    write_report,
)
from .model import (
    Dataset,
    InteractionRecord,
    Polarity,
    RatingScale,
    categorize,
    node_label,
    normalize_weight,
    validate_dataset,
)
from .reputation import (
    ALL_HISTORY,
    HistoryWindow,
    PairCounts,
    ReputationScore,
    apply_window,
    dynamic_profile,
    expected_value,
    mean_pair_values,
    node_reputation,
    pair_counts,
    rank_all,
)

__version__ = "0.1.0"
