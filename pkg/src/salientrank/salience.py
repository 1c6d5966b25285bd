"""Stakeholder salience classification and per-group priority aggregation.

Stakeholders are sorted into three tiers by how many of the power,
legitimacy, and urgency attributes they hold (one, two, or all three);
records holding none are excluded rather than rejected. Each tier carries a
fixed weight, and the tier's priority is the mean of its members' comparison
weights multiplied by that tier weight, unless an explicit override is set.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping, Sequence

from .ahp import ComparisonMatrix, principal_eigen
from .errors import (
    DuplicateIdError,
    LabelMismatchError,
    MissingMatrixError,
    NegativePriorityError,
)


class Tier(enum.Enum):
    LATENT = "latent"
    EXPECTANT = "expectant"
    DEFINITIVE = "definitive"

    @property
    def weight(self) -> int:
        return _TIER_WEIGHTS[self]

    @property
    def attribute_count(self) -> int:
        return _TIER_WEIGHTS[self]  # tiers hold exactly 1, 2, or 3 attributes


_TIER_WEIGHTS = {Tier.LATENT: 1, Tier.EXPECTANT: 2, Tier.DEFINITIVE: 3}

TIERS: tuple[Tier, ...] = (Tier.LATENT, Tier.EXPECTANT, Tier.DEFINITIVE)


def tier_from_name(name: str) -> Tier:
    try:
        return Tier(name.strip().lower())
    except ValueError:
        raise LabelMismatchError(
            f"unknown tier '{name}'; expected one of latent, expectant, definitive"
        ) from None


@dataclass(frozen=True)
class StakeholderRecord:
    id: str
    name: str
    power: bool = False
    legitimacy: bool = False
    urgency: bool = False

    @property
    def attribute_count(self) -> int:
        return int(self.power) + int(self.legitimacy) + int(self.urgency)


def classify(record: StakeholderRecord) -> Tier | None:
    """Tier for the record's attribute count; None marks a non-stakeholder.

    Only the count matters, never which attributes are held.
    """
    count = record.attribute_count
    if count == 0:
        return None
    return TIERS[count - 1]


@dataclass(frozen=True)
class SalienceGroup:
    tier: Tier
    members: tuple[str, ...]

    @property
    def group_weight(self) -> int:
        return self.tier.weight


@dataclass(frozen=True)
class GroupedStakeholders:
    groups: Mapping[Tier, SalienceGroup]
    excluded: tuple[str, ...]


def group_members(stakeholders: Sequence[StakeholderRecord]) -> GroupedStakeholders:
    """Partition stakeholders into the three tiers, preserving input order."""
    seen: set[str] = set()
    members: dict[Tier, list[str]] = {t: [] for t in TIERS}
    excluded: list[str] = []
    for record in stakeholders:
        if record.id in seen:
            raise DuplicateIdError(f"duplicate stakeholder id: {record.id}")
        seen.add(record.id)
        tier = classify(record)
        if tier is None:
            excluded.append(record.id)
        else:
            members[tier].append(record.id)
    return GroupedStakeholders(
        groups={t: SalienceGroup(t, tuple(members[t])) for t in TIERS},
        excluded=tuple(excluded),
    )


@dataclass(frozen=True)
class GroupPriority:
    """A tier's aggregate priority and the member weights behind it."""

    tier: Tier
    member_weights: Mapping[str, float]
    mean_weight: float
    priority: float
    override: float | None = None

    @property
    def group_weight(self) -> int:
        return self.tier.weight


def group_priority(
    group: SalienceGroup,
    matrix: ComparisonMatrix | None = None,
    override: float | None = None,
) -> GroupPriority:
    """Aggregate a tier: mean of member weights times the tier weight.

    An override replaces only the aggregate priority; member weights, when
    computable, are reported untouched. Singleton groups need no matrix
    (the normalized weight of a single member is 1). An empty group has
    priority 0 unless overridden.
    """
    n = len(group.members)
    if override is not None and override < 0:
        raise NegativePriorityError(
            f"override for {group.tier.value} is negative: {override}"
        )
    if matrix is not None:
        if matrix.labels != group.members:
            raise LabelMismatchError(
                f"matrix labels {list(matrix.labels)} do not match "
                f"{group.tier.value} members {list(group.members)}"
            )
        weights = dict(zip(matrix.labels, principal_eigen(matrix).priorities))
        mean = sum(weights.values()) / n
    elif n == 0:
        weights, mean = {}, 0.0
    elif n == 1:
        weights, mean = {group.members[0]: 1.0}, 1.0
    elif override is not None:
        weights, mean = {}, 0.0  # member weights unknown without a matrix
    else:
        raise MissingMatrixError(
            f"{group.tier.value} has {n} members but no comparison matrix and no override"
        )
    if override is not None:
        priority = float(override)
    else:
        priority = mean * group.group_weight
    return GroupPriority(
        tier=group.tier,
        member_weights=weights,
        mean_weight=mean,
        priority=priority,
        override=None if override is None else float(override),
    )
