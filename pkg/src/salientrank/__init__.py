"""Stakeholder-weighted requirement prioritization.

Stakeholders are classified by which of power, legitimacy, and urgency they
hold, each salience group weighs its members through pairwise comparisons,
and requirements are ranked by value and urgency scores weighted by the
resulting group priorities.
"""

from .ahp import (
    CONSISTENCY_THRESHOLD,
    MAX_ORDER,
    MIN_ORDER,
    RANDOM_INDEX,
    SAATY_SCALE,
    SCALE_LABELS,
    ComparisonMatrix,
    PriorityResult,
    as_fraction,
    column_average_priorities,
    matrix_from_pairs,
    missing_pairs,
    most_inconsistent_triad,
    parse_judgment,
    principal_eigen,
    snap_to_scale,
    validate_matrix,
)
from .errors import (
    DomainError,
    DocumentError,
    SalientrankError,
    UsageError,
)
from .salience import (
    TIERS,
    GroupedStakeholders,
    GroupPriority,
    SalienceGroup,
    StakeholderRecord,
    Tier,
    classify,
    group_members,
    group_priority,
    tier_from_name,
)
from .scoring import (
    SCORE_MAX,
    SCORE_MIN,
    VALUE_SCALE_LABELS,
    Factor,
    Ranking,
    Requirement,
    RequirementWeight,
    ScoreTable,
    WhatIfResult,
    check_score,
    factor_weight,
    rank,
    requirement_weights,
    what_if,
)
from .session import (
    DerivedResults,
    Session,
    ValidationReport,
    add_requirement,
    add_stakeholder,
    compute,
    computed,
    input_digest,
    load,
    load_path,
    new_session,
    ranking_csv,
    save,
    save_path,
    set_judgment,
    set_override,
    set_score,
    upsert_requirement,
    upsert_stakeholder,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "CONSISTENCY_THRESHOLD",
    "MAX_ORDER",
    "MIN_ORDER",
    "RANDOM_INDEX",
    "SAATY_SCALE",
    "SCALE_LABELS",
    "SCORE_MAX",
    "SCORE_MIN",
    "TIERS",
    "VALUE_SCALE_LABELS",
    "ComparisonMatrix",
    "DerivedResults",
    "DocumentError",
    "DomainError",
    "Factor",
    "GroupPriority",
    "GroupedStakeholders",
    "PriorityResult",
    "Ranking",
    "Requirement",
    "RequirementWeight",
    "SalienceGroup",
    "SalientrankError",
    "ScoreTable",
    "Session",
    "StakeholderRecord",
    "Tier",
    "UsageError",
    "ValidationReport",
    "WhatIfResult",
    "add_requirement",
    "add_stakeholder",
    "as_fraction",
    "check_score",
    "classify",
    "column_average_priorities",
    "compute",
    "computed",
    "factor_weight",
    "group_members",
    "group_priority",
    "input_digest",
    "load",
    "load_path",
    "matrix_from_pairs",
    "missing_pairs",
    "most_inconsistent_triad",
    "new_session",
    "parse_judgment",
    "principal_eigen",
    "rank",
    "ranking_csv",
    "requirement_weights",
    "save",
    "save_path",
    "set_judgment",
    "set_override",
    "set_score",
    "snap_to_scale",
    "tier_from_name",
    "upsert_requirement",
    "upsert_stakeholder",
    "validate",
    "what_if",
]
