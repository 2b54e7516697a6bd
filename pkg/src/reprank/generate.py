"""Deterministic synthetic-scenario generator.

Scenarios model an organization where every member rates every other member
once (a complete directed graph), with two optional attack patterns layered
on top: a collusion ring whose members rate each other at an inflated value,
and a campaign in which a set of attackers all rate one victim at a chosen
value (a low rating models a smear campaign; a high one, a popular node).

All randomness comes from Python's ``random.Random`` (MT19937) seeded with
the scenario seed; base ratings are drawn for every ordered pair in a fixed
order before any override is applied, so the same seed always produces the
same base ratings no matter which attacks are configured.
"""

import json
from dataclasses import dataclass
from random import Random

from .errors import ParseError, ScenarioError
from .model import Dataset, RatingScale, node_label, validate_dataset

DEFAULT_SCALE = RatingScale(min_valid=1, max_valid=5, unknown_value=0)


@dataclass(frozen=True)
class BaseDistribution:
    """Background rating distribution: uniform over the valid range,
    normal(mu, sigma) rounded and clamped, or skewed toward high ratings."""

    kind: str = "uniform"
    mu: float | None = None
    sigma: float | None = None

    def __post_init__(self):
        if self.kind not in ("uniform", "normal", "skewed_high"):
            raise ScenarioError(f"unknown base distribution {self.kind!r}")
        if self.kind == "normal":
            if self.mu is None or self.sigma is None:
                raise ScenarioError("normal base distribution needs mu and sigma")
            if self.sigma < 0:
                raise ScenarioError(f"sigma must be >= 0, got {self.sigma}")


@dataclass(frozen=True)
class CollusionRing:
    members: tuple[str, ...]
    rating: int


@dataclass(frozen=True)
class RatingCampaign:
    attackers: tuple[str, ...]
    victim: str
    rating: int


@dataclass(frozen=True)
class ScenarioSpec:
    n_nodes: int
    base: BaseDistribution = BaseDistribution()
    collusion: CollusionRing | None = None
    campaign: RatingCampaign | None = None
    seed: int = 0
    scale: RatingScale = DEFAULT_SCALE


def _draw(rng: Random, base: BaseDistribution, scale: RatingScale) -> int:
    lo, hi = scale.min_valid, scale.max_valid
    if base.kind == "uniform":
        return rng.randint(lo, hi)
    if base.kind == "normal":
        return min(hi, max(lo, round(rng.normalvariate(base.mu, base.sigma))))
    # skewed_high: cube-root transform pushes mass toward the top of the scale
    return min(hi, max(lo, lo + round((hi - lo) * rng.random() ** (1 / 3))))


def _check_spec(spec: ScenarioSpec, nodes: list[str]) -> None:
    node_set = set(nodes)
    problems = []
    if spec.n_nodes < 2:
        problems.append(f"need at least 2 nodes, got {spec.n_nodes}")
    if spec.collusion is not None:
        ring = spec.collusion
        if len(ring.members) < 2:
            problems.append("collusion ring needs at least 2 members")
        if len(set(ring.members)) != len(ring.members):
            problems.append("collusion ring has duplicate members")
        unknown = sorted(set(ring.members) - node_set)
        if unknown:
            problems.append(f"collusion members not in node set: {unknown}")
        if not spec.scale.is_valid(ring.rating):
            problems.append(f"collusion rating {ring.rating} outside the scale")
    if spec.campaign is not None:
        camp = spec.campaign
        unknown = sorted(set(camp.attackers) - node_set)
        if unknown:
            problems.append(f"campaign attackers not in node set: {unknown}")
        if camp.victim not in node_set:
            problems.append(f"campaign victim {camp.victim!r} not in node set")
        if camp.victim in camp.attackers:
            problems.append("campaign victim cannot be an attacker")
        if not spec.scale.is_valid(camp.rating):
            problems.append(f"campaign rating {camp.rating} outside the scale")
    if problems:
        raise ScenarioError("; ".join(problems))


def generate_scenario(spec: ScenarioSpec) -> Dataset:
    """Build the scenario's dataset. Deterministic given the seed."""
    nodes = [node_label(i, spec.n_nodes) for i in range(spec.n_nodes)]
    _check_spec(spec, nodes)

    rng = Random(spec.seed)
    weights: dict[tuple[str, str], int] = {}
    for rater in nodes:
        for ratee in nodes:
            if rater != ratee:
                weights[(rater, ratee)] = _draw(rng, spec.base, spec.scale)

    if spec.collusion is not None:
        for rater in spec.collusion.members:
            for ratee in spec.collusion.members:
                if rater != ratee:
                    weights[(rater, ratee)] = spec.collusion.rating
    if spec.campaign is not None:
        for attacker in spec.campaign.attackers:
            weights[(attacker, spec.campaign.victim)] = spec.campaign.rating

    records = [
        (rater, ratee, weight, 0) for (rater, ratee), weight in weights.items()
    ]
    return validate_dataset(nodes, records, spec.scale)


def load_scenario_spec(path, seed_override: int | None = None) -> ScenarioSpec:
    """Read a scenario from a JSON file.

    Schema: {"nodes": int, "seed": int, "base": {"kind", "mu"?, "sigma"?},
    "collusion": {"members", "rating"}?, "campaign": {"attackers", "victim",
    "rating"}?, "scale": {"min", "max", "unknown"?, "threshold"?}?}.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(path, exc.lineno, f"invalid JSON: {exc.msg}") from None

    def bad(reason: str):
        return ScenarioError(f"{path}: {reason}")

    if not isinstance(raw, dict):
        raise bad("top level must be an object")
    try:
        n_nodes = int(raw["nodes"])
    except KeyError:
        raise bad("missing required key 'nodes'") from None

    scale = DEFAULT_SCALE
    if "scale" in raw:
        s = raw["scale"]
        try:
            scale = RatingScale(
                min_valid=int(s["min"]),
                max_valid=int(s["max"]),
                unknown_value=int(s.get("unknown", 0)),
                threshold=s.get("threshold"),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise bad(f"bad scale: {exc}") from None

    base = BaseDistribution()
    if "base" in raw:
        b = raw["base"]
        base = BaseDistribution(
            kind=b.get("kind", "uniform"), mu=b.get("mu"), sigma=b.get("sigma")
        )

    collusion = None
    if raw.get("collusion") is not None:
        c = raw["collusion"]
        try:
            collusion = CollusionRing(members=tuple(c["members"]), rating=int(c["rating"]))
        except (KeyError, TypeError) as exc:
            raise bad(f"bad collusion block: {exc}") from None

    campaign = None
    if raw.get("campaign") is not None:
        c = raw["campaign"]
        try:
            campaign = RatingCampaign(
                attackers=tuple(c["attackers"]),
                victim=c["victim"],
                rating=int(c["rating"]),
            )
        except (KeyError, TypeError) as exc:
            raise bad(f"bad campaign block: {exc}") from None

    seed = int(raw.get("seed", 0)) if seed_override is None else seed_override
    return ScenarioSpec(
        n_nodes=n_nodes,
        base=base,
        collusion=collusion,
        campaign=campaign,
        seed=seed,
        scale=scale,
    )
