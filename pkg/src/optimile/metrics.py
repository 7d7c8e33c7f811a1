"""Plan scoring: convenience, cost-effectiveness, and the efficiency index.

Raw scores are ratios of covered distance to cost (weighted minutes) and to
fare (Rupees). They are min-max normalized over the feasible plan set of one
query, so the efficiency index always lands in [0, 1] and is comparable
across queries.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import EmptySet, ZeroCost, ZeroFare
from .planner import Plan, check_weight_pair


@dataclass(frozen=True)
class EfficiencyWeights:
    w_c: float = 0.5
    w_e: float = 0.5

    def __post_init__(self) -> None:
        check_weight_pair(self.w_c, self.w_e, names="w_c, w_e")


@dataclass(frozen=True)
class PathScore:
    convenience: float
    cost_effectiveness: float
    c_norm: float | None = None
    e_norm: float | None = None
    efficiency: float | None = None


def convenience(plan: Plan) -> float:
    """Distance covered per weighted minute of cost."""
    if plan.cost <= 0:
        raise ZeroCost(f"plan cost must be positive, got {plan.cost}")
    return plan.total_distance_km / plan.cost


def cost_effectiveness(plan: Plan) -> float:
    """Distance covered per Rupee of total fare."""
    if plan.fare.total_rs <= 0:
        raise ZeroFare(f"plan fare must be positive, got {plan.fare.total_rs}")
    return plan.total_distance_km / plan.fare.total_rs


def _min_max(values: list[float]) -> list[float]:
    lo = min(values)
    hi = max(values)
    if hi == lo:
        # Every path ties at the best value.
        return [1.0] * len(values)
    span = hi - lo
    return [(v - lo) / span for v in values]


def normalize(scores: list[PathScore]) -> list[PathScore]:
    """Fill c_norm and e_norm by min-max over the given set."""
    if not scores:
        raise EmptySet("cannot normalize an empty score set")
    c_norms = _min_max([s.convenience for s in scores])
    e_norms = _min_max([s.cost_effectiveness for s in scores])
    return [
        replace(s, c_norm=c, e_norm=e) for s, c, e in zip(scores, c_norms, e_norms)
    ]


def efficiency(score: PathScore, weights: EfficiencyWeights = EfficiencyWeights()) -> float:
    """Weighted sum of the normalized scores; higher is better."""
    if score.c_norm is None or score.e_norm is None:
        raise ValueError("normalize the score set before computing efficiency")
    return weights.w_c * score.c_norm + weights.w_e * score.e_norm


def score_plans(
    plans: list[Plan], weights: EfficiencyWeights = EfficiencyWeights()
) -> list[PathScore]:
    """Raw scores, normalization, and efficiency for one feasible plan set."""
    raw = [
        PathScore(convenience=convenience(p), cost_effectiveness=cost_effectiveness(p))
        for p in plans
    ]
    normalized = normalize(raw)
    return [replace(s, efficiency=efficiency(s, weights)) for s in normalized]
