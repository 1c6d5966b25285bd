"""Requirement weighting and ranking from per-tier value/urgency scores.

Each tier scores every requirement 1..5 on two factors. A factor weight is
the sum over tiers of score times tier priority; the requirement total is
the value weight plus the urgency weight, and requirements are ranked by
descending total.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import MissingScoreError, NegativePriorityError, OffScaleScoreError
from .salience import TIERS, Tier

SCORE_MIN = 1
SCORE_MAX = 5

#: Verbal anchors for the 1..5 value scale (UI labels only).
VALUE_SCALE_LABELS: Mapping[int, str] = {
    1: "no value",
    2: "little value",
    3: "some value",
    4: "high value",
    5: "very high value",
}


class Factor(enum.Enum):
    VALUE = "value"
    URGENCY = "urgency"


FACTORS: tuple[Factor, ...] = (Factor.VALUE, Factor.URGENCY)


@dataclass(frozen=True)
class Requirement:
    id: str
    title: str


def check_score(value: int) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or not SCORE_MIN <= value <= SCORE_MAX:
        raise OffScaleScoreError(f"score must be an integer in [1, 5], got {value!r}")
    return value


@dataclass(frozen=True)
class ScoreTable:
    """Per-(tier, requirement) integer scores for one factor."""

    factor: Factor
    scores: Mapping[tuple[Tier, str], int]

    def __post_init__(self):
        for (tier, rid), value in self.scores.items():
            try:
                check_score(value)
            except OffScaleScoreError:
                raise OffScaleScoreError(
                    f"{self.factor.value} score for {tier.value}/{rid} "
                    f"must be an integer in [1, 5], got {value!r}"
                ) from None

    def get(self, tier: Tier, requirement_id: str) -> int | None:
        return self.scores.get((tier, requirement_id))


@dataclass(frozen=True)
class RequirementWeight:
    requirement_id: str
    value_weight: float
    urgency_weight: float
    total: float


@dataclass(frozen=True)
class Ranking:
    """Requirement weights in rank order plus clusters of exactly-tied totals."""

    entries: tuple[RequirementWeight, ...]
    ties: tuple[tuple[str, ...], ...]

    def position(self, requirement_id: str) -> int:
        for i, entry in enumerate(self.entries):
            if entry.requirement_id == requirement_id:
                return i + 1
        raise KeyError(requirement_id)


@dataclass(frozen=True)
class WhatIfResult:
    """Hypothetical ranking plus each requirement's movement vs the baseline.

    A positive delta means the requirement moved up (toward rank 1).
    """

    ranking: Ranking
    deltas: Mapping[str, int]


def _check_priorities(priorities: Mapping[Tier, float]) -> None:
    for tier, p in priorities.items():
        if p < 0:
            raise NegativePriorityError(f"priority for {tier.value} is negative: {p}")


def factor_weight(
    requirement_id: str,
    table: ScoreTable,
    priorities: Mapping[Tier, float],
) -> float:
    """Priority-weighted score sum for one requirement on one factor.

    Tiers with priority 0 (or absent) contribute nothing and need no score;
    a missing score for a tier with positive priority is an error.
    """
    _check_priorities(priorities)
    total = 0.0
    for tier in TIERS:
        priority = priorities.get(tier, 0.0)
        if priority == 0:
            continue
        score = table.get(tier, requirement_id)
        if score is None:
            raise MissingScoreError(
                f"missing {table.factor.value} score for {tier.value}/{requirement_id}"
            )
        total += score * priority
    return total


def requirement_weights(
    requirements: Sequence[Requirement],
    value_table: ScoreTable,
    urgency_table: ScoreTable,
    priorities: Mapping[Tier, float],
) -> tuple[RequirementWeight, ...]:
    """Value and urgency weights per requirement; total is their sum."""
    out = []
    for req in requirements:
        vw = factor_weight(req.id, value_table, priorities)
        uw = factor_weight(req.id, urgency_table, priorities)
        out.append(RequirementWeight(req.id, vw, uw, vw + uw))
    return tuple(out)


def rank(weights: Sequence[RequirementWeight]) -> Ranking:
    """Sort by total descending; break ties by value weight descending, then id.

    Tie clusters record requirements whose totals are exactly equal.
    """
    ordered = tuple(
        sorted(weights, key=lambda w: (-w.total, -w.value_weight, w.requirement_id))
    )
    ties = []
    cluster = []
    for prev, cur in zip(ordered, ordered[1:]):
        if cur.total == prev.total:
            if not cluster:
                cluster = [prev.requirement_id]
            cluster.append(cur.requirement_id)
        else:
            if cluster:
                ties.append(tuple(cluster))
                cluster = []
    if cluster:
        ties.append(tuple(cluster))
    return Ranking(entries=ordered, ties=tuple(ties))


def what_if(
    requirements: Sequence[Requirement],
    value_table: ScoreTable,
    urgency_table: ScoreTable,
    baseline_priorities: Mapping[Tier, float],
    hypothetical_priorities: Mapping[Tier, float],
) -> WhatIfResult:
    """Rank under hypothetical priorities and report rank deltas vs baseline.

    Pure: neither input is mutated, nothing is persisted.
    """
    _check_priorities(hypothetical_priorities)
    baseline = rank(
        requirement_weights(requirements, value_table, urgency_table, baseline_priorities)
    )
    hypothetical = rank(
        requirement_weights(requirements, value_table, urgency_table, hypothetical_priorities)
    )
    deltas = {
        entry.requirement_id: baseline.position(entry.requirement_id) - (i + 1)
        for i, entry in enumerate(hypothetical.entries)
    }
    return WhatIfResult(ranking=hypothetical, deltas=deltas)
