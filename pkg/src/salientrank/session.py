"""Persistent project session: stakeholders, judgments, scores, and results.

A session is an immutable snapshot; mutation helpers return a new session
with cached derived results cleared. Documents are canonical JSON
(sorted keys, two-space indent, exact rationals as numerator/denominator
pairs) so that save -> load -> save is byte-identical and reciprocity
survives round trips.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
import warnings as _warnings
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path
from typing import Mapping

from . import scoring
from .ahp import (
    MAX_ORDER,
    SAATY_SCALE,
    ComparisonMatrix,
    PriorityResult,
    matrix_from_pairs,
    missing_pairs,
    principal_eigen,
)
from .errors import (
    DomainError,
    DuplicateIdError,
    LabelMismatchError,
    MalformedDocumentError,
    NegativePriorityError,
    OffScaleJudgmentError,
    OrderOutOfRangeError,
    UnknownEntityError,
    UnsupportedSchemaVersionError,
    ValidationFailedError,
)
from .salience import (
    TIERS,
    GroupedStakeholders,
    GroupPriority,
    StakeholderRecord,
    Tier,
    classify,
    group_members,
    group_priority,
)
from .scoring import (
    Factor,
    Ranking,
    Requirement,
    RequirementWeight,
    ScoreTable,
    WhatIfResult,
    check_score,
)

SCHEMA_VERSION = 1
FILE_SUFFIX = ".salie.json"

PairJudgments = Mapping[tuple[str, str], Fraction]


class DerivedMismatchWarning(UserWarning):
    """Stored derived results disagreed with a fresh recomputation on load."""


@dataclass(frozen=True)
class ValidationReport:
    errors: tuple[str, ...]
    warnings: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.errors


@dataclass(frozen=True)
class DerivedResults:
    """Everything computable from session inputs, cached with their digest."""

    input_digest: str
    group_priorities: Mapping[Tier, GroupPriority]
    consistency: Mapping[Tier, PriorityResult]
    requirement_weights: tuple[RequirementWeight, ...]
    ranking: Ranking
    warnings: tuple[str, ...]


@dataclass(frozen=True)
class Session:
    schema_version: int = SCHEMA_VERSION
    name: str = ""
    stakeholders: tuple[StakeholderRecord, ...] = ()
    judgments: Mapping[Tier, PairJudgments] = field(default_factory=dict)
    priority_overrides: Mapping[Tier, float] = field(default_factory=dict)
    requirements: tuple[Requirement, ...] = ()
    value_scores: Mapping[tuple[Tier, str], int] = field(default_factory=dict)
    urgency_scores: Mapping[tuple[Tier, str], int] = field(default_factory=dict)
    derived: DerivedResults | None = None

    def stakeholder(self, sid: str) -> StakeholderRecord | None:
        for record in self.stakeholders:
            if record.id == sid:
                return record
        return None

    def requirement(self, rid: str) -> Requirement | None:
        for req in self.requirements:
            if req.id == rid:
                return req
        return None

    def scores_for(self, factor: Factor) -> Mapping[tuple[Tier, str], int]:
        return self.value_scores if factor is Factor.VALUE else self.urgency_scores


def new_session(name: str) -> Session:
    return Session(name=name)


# --- mutation helpers (each returns a new snapshot, derived cleared) ---


def rename(s: Session, name: str) -> Session:
    if name == s.name:
        return s
    return replace(s, name=name)  # name is not a computation input; keep derived


def add_stakeholder(s: Session, record: StakeholderRecord) -> Session:
    existing = s.stakeholder(record.id)
    if existing == record:
        return s
    if existing is not None:
        raise DuplicateIdError(f"stakeholder id '{record.id}' already exists")
    return replace(s, stakeholders=s.stakeholders + (record,), derived=None)


def upsert_stakeholder(s: Session, record: StakeholderRecord) -> Session:
    existing = s.stakeholder(record.id)
    if existing == record:
        return s
    if existing is None:
        return add_stakeholder(s, record)
    stakeholders = tuple(record if r.id == record.id else r for r in s.stakeholders)
    judgments = dict(s.judgments)
    old_tier, new_tier = classify(existing), classify(record)
    if old_tier is not None and old_tier != new_tier:
        # Judgments are meaningless once the member leaves the group.
        kept = {
            pair: v
            for pair, v in judgments.get(old_tier, {}).items()
            if record.id not in pair
        }
        judgments[old_tier] = kept
    return replace(s, stakeholders=stakeholders, judgments=judgments, derived=None)


def add_requirement(s: Session, req: Requirement) -> Session:
    existing = s.requirement(req.id)
    if existing == req:
        return s
    if existing is not None:
        raise DuplicateIdError(f"requirement id '{req.id}' already exists")
    return replace(s, requirements=s.requirements + (req,), derived=None)


def upsert_requirement(s: Session, req: Requirement) -> Session:
    existing = s.requirement(req.id)
    if existing == req:
        return s
    if existing is None:
        return add_requirement(s, req)
    requirements = tuple(req if r.id == req.id else r for r in s.requirements)
    return replace(s, requirements=requirements, derived=None)


def tier_members(s: Session) -> GroupedStakeholders:
    return group_members(s.stakeholders)


def set_judgment(s: Session, tier: Tier, a: str, b: str, value: Fraction) -> Session:
    """Store one pairwise judgment (a vs b) for a tier's matrix.

    The pair is canonicalized to member order (the reciprocal is stored when
    entered against it), so the persisted form is always an upper-triangle
    entry. Entry is strict: only fundamental-scale values are accepted.
    """
    if a == b:
        raise LabelMismatchError(f"cannot compare stakeholder '{a}' with itself")
    for sid in (a, b):
        if s.stakeholder(sid) is None:
            raise UnknownEntityError(f"unknown stakeholder '{sid}'")
    members = tier_members(s).groups[tier].members
    for sid in (a, b):
        if sid not in members:
            raise LabelMismatchError(
                f"stakeholder '{sid}' is not a member of the {tier.value} group"
            )
    if len(members) > MAX_ORDER:
        raise OrderOutOfRangeError(
            f"{tier.value} has {len(members)} members, above the comparison "
            f"limit of {MAX_ORDER}; split the group"
        )
    if value not in SAATY_SCALE:
        raise OffScaleJudgmentError(
            f"judgment {value} is not on the 1-9 fundamental scale"
        )
    if members.index(a) > members.index(b):
        a, b, value = b, a, 1 / value
    tier_judgments = dict(s.judgments.get(tier, {}))
    tier_judgments.pop((b, a), None)
    if tier_judgments.get((a, b)) == value:
        return s
    tier_judgments[(a, b)] = value
    judgments = dict(s.judgments)
    judgments[tier] = tier_judgments
    return replace(s, judgments=judgments, derived=None)


def set_score(s: Session, factor: Factor, tier: Tier, rid: str, score: int) -> Session:
    check_score(score)
    if s.requirement(rid) is None:
        raise UnknownEntityError(f"unknown requirement '{rid}'")
    table = dict(s.scores_for(factor))
    if table.get((tier, rid)) == score:
        return s
    table[(tier, rid)] = score
    if factor is Factor.VALUE:
        return replace(s, value_scores=table, derived=None)
    return replace(s, urgency_scores=table, derived=None)


def set_override(s: Session, tier: Tier, value: float | None) -> Session:
    overrides = dict(s.priority_overrides)
    if value is None:
        if tier not in overrides:
            return s
        del overrides[tier]
    else:
        value = float(value)
        if value < 0:
            raise NegativePriorityError(f"override for {tier.value} is negative: {value}")
        if overrides.get(tier) == value:
            return s
        overrides[tier] = value
    return replace(s, priority_overrides=overrides, derived=None)


# --- validation ---


def _tier_needs_scores(s: Session, members: tuple[str, ...], tier: Tier) -> bool:
    override = s.priority_overrides.get(tier)
    if override is not None:
        return override > 0
    return len(members) > 0


def _complete_judgments(
    members: tuple[str, ...], judgments: PairJudgments
) -> PairJudgments | None:
    relevant = {
        pair: v for pair, v in judgments.items() if pair[0] in members and pair[1] in members
    }
    if missing_pairs(members, relevant):
        return None
    return relevant


def validate(s: Session, scope: str = "full") -> ValidationReport:
    """Check completeness and referential integrity without raising.

    ``scope="priorities"`` restricts the report to what group-priority
    computation needs (requirements and score tables are not checked).
    """
    errors: list[str] = []
    warns: list[str] = []

    seen: set[str] = set()
    unique: list[StakeholderRecord] = []
    for record in s.stakeholders:
        if record.id in seen:
            errors.append(f"duplicate stakeholder id: {record.id}")
        else:
            seen.add(record.id)
            unique.append(record)
    rid_seen: set[str] = set()
    unique_reqs: list[Requirement] = []
    for req in s.requirements:
        if req.id in rid_seen:
            errors.append(f"duplicate requirement id: {req.id}")
        else:
            rid_seen.add(req.id)
            unique_reqs.append(req)

    if not unique:
        errors.append("no stakeholders defined")
    if scope == "full" and not unique_reqs:
        errors.append("no requirements defined")

    grouped = group_members(unique)
    for sid in grouped.excluded:
        warns.append(f"stakeholder '{sid}' has no salience attributes and is excluded")

    for tier in TIERS:
        members = grouped.groups[tier].members
        judgments = s.judgments.get(tier, {})
        for a, b in judgments:
            for sid in (a, b):
                if sid not in seen:
                    errors.append(
                        f"{tier.value}: judgment references unknown stakeholder '{sid}'"
                    )
                elif sid not in members:
                    errors.append(
                        f"{tier.value}: judgment ({a}, {b}) references non-member '{sid}'"
                    )
            if a == b:
                errors.append(f"{tier.value}: judgment compares '{a}' with itself")
        if not members:
            warns.append(f"{tier.value}: no members")
            continue
        if len(members) < 2:
            continue
        if len(members) > MAX_ORDER:
            errors.append(
                f"{tier.value}: {len(members)} members exceed the comparison "
                f"limit of {MAX_ORDER}; split the group"
            )
            continue
        override = s.priority_overrides.get(tier)
        complete = _complete_judgments(members, judgments)
        if complete is None:
            missing = missing_pairs(
                members,
                {p: v for p, v in judgments.items() if p[0] in members and p[1] in members},
            )
            detail = ", ".join(f"({a}, {b})" for a, b in missing)
            if override is None:
                errors.append(
                    f"{tier.value}: comparison matrix incomplete; missing: {detail}"
                )
            else:
                warns.append(
                    f"{tier.value}: comparison matrix incomplete (priority overridden); "
                    f"member weights unavailable"
                )
            continue
        try:
            matrix = matrix_from_pairs(members, complete)
        except DomainError as exc:
            errors.append(f"{tier.value}: invalid comparison matrix: {exc}")
            continue
        result = principal_eigen(matrix)
        if not result.consistent:
            warns.append(
                f"{tier.value}: comparison matrix inconsistent "
                f"(CR {result.consistency_ratio:.4f} > 0.1)"
            )

    for tier, value in s.priority_overrides.items():
        if value < 0:
            errors.append(f"{tier.value}: priority override is negative: {value}")

    if scope == "full":
        for factor in (Factor.VALUE, Factor.URGENCY):
            table = s.scores_for(factor)
            for (tier, rid), value in table.items():
                if rid not in rid_seen:
                    errors.append(
                        f"{factor.value} score references unknown requirement '{rid}'"
                    )
                try:
                    check_score(value)
                except DomainError:
                    errors.append(
                        f"{factor.value} score for {tier.value}/{rid} out of range: {value!r}"
                    )
            for tier in TIERS:
                if not _tier_needs_scores(s, grouped.groups[tier].members, tier):
                    continue
                for req in unique_reqs:
                    if (tier, req.id) not in table:
                        errors.append(
                            f"{factor.value} score missing for {tier.value}/{req.id}"
                        )

    return ValidationReport(errors=tuple(errors), warnings=tuple(warns))


# --- computation ---


def compute(s: Session) -> DerivedResults:
    """Run the full pipeline: group, weight, score, rank.

    Raises ValidationFailedError (carrying the report) unless validation is
    clean. Deterministic and idempotent for a given session.
    """
    report = validate(s)
    if not report.ok:
        raise ValidationFailedError(report)
    grouped = group_members(s.stakeholders)
    priorities: dict[Tier, GroupPriority] = {}
    consistency: dict[Tier, PriorityResult] = {}
    for tier in TIERS:
        group = grouped.groups[tier]
        matrix: ComparisonMatrix | None = None
        if len(group.members) >= 2:
            complete = _complete_judgments(group.members, s.judgments.get(tier, {}))
            if complete is not None:
                matrix = matrix_from_pairs(group.members, complete)
        if matrix is not None:
            consistency[tier] = principal_eigen(matrix)
        priorities[tier] = group_priority(group, matrix, s.priority_overrides.get(tier))
    weights = scoring.requirement_weights(
        s.requirements,
        ScoreTable(Factor.VALUE, dict(s.value_scores)),
        ScoreTable(Factor.URGENCY, dict(s.urgency_scores)),
        {tier: gp.priority for tier, gp in priorities.items()},
    )
    return DerivedResults(
        input_digest=input_digest(s),
        group_priorities=priorities,
        consistency=consistency,
        requirement_weights=weights,
        ranking=scoring.rank(weights),
        warnings=report.warnings,
    )


def computed(s: Session) -> Session:
    """Session with a fresh derived-results cache attached."""
    return replace(s, derived=compute(s))


def group_priorities(s: Session) -> tuple[dict[Tier, GroupPriority], dict[Tier, PriorityResult]]:
    """Group priorities and consistency results only (scores not required)."""
    report = validate(s, scope="priorities")
    if not report.ok:
        raise ValidationFailedError(report)
    grouped = group_members(s.stakeholders)
    priorities: dict[Tier, GroupPriority] = {}
    consistency: dict[Tier, PriorityResult] = {}
    for tier in TIERS:
        group = grouped.groups[tier]
        matrix = None
        if len(group.members) >= 2:
            complete = _complete_judgments(group.members, s.judgments.get(tier, {}))
            if complete is not None:
                matrix = matrix_from_pairs(group.members, complete)
        if matrix is not None:
            consistency[tier] = principal_eigen(matrix)
        priorities[tier] = group_priority(group, matrix, s.priority_overrides.get(tier))
    return priorities, consistency


def what_if(
    s: Session,
    priorities: Mapping[Tier, float] | None = None,
    group_weights: Mapping[Tier, float] | None = None,
) -> WhatIfResult:
    """Re-rank under hypothetical tier priorities or tier weights.

    A hypothetical group weight scales the tier's baseline priority by
    (new weight / built-in weight); an explicit hypothetical priority wins
    over both. The session itself is never mutated.
    """
    derived = fresh_derived(s) or compute(s)
    baseline = {t: derived.group_priorities[t].priority for t in TIERS}
    hypo = dict(baseline)
    if group_weights:
        for tier, gw in group_weights.items():
            if gw < 0:
                raise NegativePriorityError(
                    f"group weight for {tier.value} is negative: {gw}"
                )
            hypo[tier] = baseline[tier] * (float(gw) / tier.weight)
    if priorities:
        for tier, p in priorities.items():
            hypo[tier] = float(p)
    return scoring.what_if(
        s.requirements,
        ScoreTable(Factor.VALUE, dict(s.value_scores)),
        ScoreTable(Factor.URGENCY, dict(s.urgency_scores)),
        baseline,
        hypo,
    )


# --- serialization ---


def canonical_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def _inputs_doc(s: Session) -> dict:
    sid_index = {r.id: i for i, r in enumerate(s.stakeholders)}
    big = len(sid_index)

    def pair_key(pair):
        a, b = pair
        return (sid_index.get(a, big), sid_index.get(b, big), a, b)

    matrices = {}
    for tier in TIERS:
        judgments = s.judgments.get(tier, {})
        if judgments:
            matrices[tier.value] = [
                {
                    "a": a,
                    "b": b,
                    "numerator": judgments[(a, b)].numerator,
                    "denominator": judgments[(a, b)].denominator,
                }
                for a, b in sorted(judgments, key=pair_key)
            ]
    scores = {}
    for factor in (Factor.VALUE, Factor.URGENCY):
        table: dict[str, dict[str, int]] = {}
        for (tier, rid), value in s.scores_for(factor).items():
            table.setdefault(tier.value, {})[rid] = value
        scores[factor.value] = table
    return {
        "schema_version": s.schema_version,
        "stakeholders": [
            {
                "id": r.id,
                "name": r.name,
                "power": r.power,
                "legitimacy": r.legitimacy,
                "urgency": r.urgency,
            }
            for r in s.stakeholders
        ],
        "matrices": matrices,
        "priority_overrides": {
            tier.value: value for tier, value in s.priority_overrides.items()
        },
        "requirements": [{"id": r.id, "title": r.title} for r in s.requirements],
        "scores": scores,
    }


def input_digest(s: Session) -> str:
    return hashlib.sha256(canonical_json(_inputs_doc(s)).encode("utf-8")).hexdigest()


def _derived_doc(d: DerivedResults) -> dict:
    return {
        "input_digest": d.input_digest,
        "group_priorities": {
            tier.value: {
                "group_weight": gp.group_weight,
                "mean_weight": gp.mean_weight,
                "member_weights": dict(gp.member_weights),
                "override": gp.override,
                "priority": gp.priority,
            }
            for tier, gp in d.group_priorities.items()
        },
        "consistency": {
            tier.value: {
                "lambda_max": r.lambda_max,
                "consistency_index": r.consistency_index,
                "consistency_ratio": r.consistency_ratio,
                "consistent": r.consistent,
            }
            for tier, r in d.consistency.items()
        },
        "requirement_weights": [
            {
                "requirement_id": w.requirement_id,
                "value_weight": w.value_weight,
                "urgency_weight": w.urgency_weight,
                "total": w.total,
            }
            for w in d.requirement_weights
        ],
        "ranking": {
            "entries": [
                {
                    "requirement_id": w.requirement_id,
                    "value_weight": w.value_weight,
                    "urgency_weight": w.urgency_weight,
                    "total": w.total,
                    "rank": i + 1,
                }
                for i, w in enumerate(d.ranking.entries)
            ],
            "ties": [list(cluster) for cluster in d.ranking.ties],
        },
        "warnings": list(d.warnings),
    }


def fresh_derived(s: Session) -> DerivedResults | None:
    """The cached derived results, but only if they match current inputs."""
    if s.derived is not None and s.derived.input_digest == input_digest(s):
        return s.derived
    return None


def save(s: Session) -> bytes:
    doc = _inputs_doc(s)
    doc["name"] = s.name
    derived = fresh_derived(s)
    if derived is not None:
        doc["derived"] = _derived_doc(derived)
    return (canonical_json(doc) + "\n").encode("utf-8")


_TOP_KEYS = {
    "schema_version",
    "name",
    "stakeholders",
    "matrices",
    "priority_overrides",
    "requirements",
    "scores",
    "derived",
}
_REQUIRED_KEYS = _TOP_KEYS - {"derived"}


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise MalformedDocumentError(message)


def _expect_keys(obj: dict, required: set[str], what: str, optional: set[str] = frozenset()) -> None:
    _expect(isinstance(obj, dict), f"{what} must be an object")
    missing = required - obj.keys()
    _expect(not missing, f"{what} missing field(s): {', '.join(sorted(missing))}")
    unknown = obj.keys() - required - optional
    if unknown:
        raise UnsupportedSchemaVersionError(
            f"{what} has unknown field(s) {', '.join(sorted(unknown))}; "
            f"the document may come from a newer schema"
        )


def _parse_tier(name, what: str) -> Tier:
    _expect(isinstance(name, str), f"{what}: tier name must be a string")
    try:
        return Tier(name)
    except ValueError:
        raise MalformedDocumentError(f"{what}: unknown tier '{name}'") from None


def load(data: bytes | str) -> Session:
    """Parse a session document, recomputing any embedded derived results.

    A stored derived block that disagrees with recomputation (or that can no
    longer be computed) raises DerivedMismatchWarning; the fresh results win.
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedDocumentError(f"not UTF-8: {exc}") from exc
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise MalformedDocumentError(f"not valid JSON: {exc}") from exc
    _expect(isinstance(doc, dict), "document root must be an object")
    _expect("schema_version" in doc, "document missing schema_version")
    version = doc["schema_version"]
    _expect(isinstance(version, int) and not isinstance(version, bool),
            "schema_version must be an integer")
    if version != SCHEMA_VERSION:
        raise UnsupportedSchemaVersionError(
            f"schema_version {version} not supported (expected {SCHEMA_VERSION})"
        )
    _expect_keys(doc, _REQUIRED_KEYS, "document", optional={"derived"})
    _expect(isinstance(doc["name"], str), "name must be a string")

    stakeholders = []
    _expect(isinstance(doc["stakeholders"], list), "stakeholders must be a list")
    for entry in doc["stakeholders"]:
        _expect_keys(entry, {"id", "name", "power", "legitimacy", "urgency"}, "stakeholder")
        _expect(isinstance(entry["id"], str) and entry["id"] != "", "stakeholder id must be a non-empty string")
        _expect(isinstance(entry["name"], str), "stakeholder name must be a string")
        for attr in ("power", "legitimacy", "urgency"):
            _expect(isinstance(entry[attr], bool), f"stakeholder {attr} must be a boolean")
        stakeholders.append(StakeholderRecord(**entry))

    judgments: dict[Tier, dict[tuple[str, str], Fraction]] = {}
    _expect(isinstance(doc["matrices"], dict), "matrices must be an object")
    for tier_name, entries in doc["matrices"].items():
        tier = _parse_tier(tier_name, "matrices")
        _expect(isinstance(entries, list), f"matrices.{tier_name} must be a list")
        pairs: dict[tuple[str, str], Fraction] = {}
        for entry in entries:
            _expect_keys(entry, {"a", "b", "numerator", "denominator"}, "judgment")
            _expect(
                isinstance(entry["a"], str) and isinstance(entry["b"], str),
                "judgment endpoints must be strings",
            )
            for part in ("numerator", "denominator"):
                v = entry[part]
                _expect(
                    isinstance(v, int) and not isinstance(v, bool) and v > 0,
                    f"judgment {part} must be a positive integer",
                )
            key = (entry["a"], entry["b"])
            _expect(key not in pairs, f"duplicate judgment for pair ({key[0]}, {key[1]})")
            pairs[key] = Fraction(entry["numerator"], entry["denominator"])
        judgments[tier] = pairs

    overrides: dict[Tier, float] = {}
    _expect(isinstance(doc["priority_overrides"], dict), "priority_overrides must be an object")
    for tier_name, value in doc["priority_overrides"].items():
        tier = _parse_tier(tier_name, "priority_overrides")
        _expect(
            isinstance(value, (int, float)) and not isinstance(value, bool),
            f"priority override for {tier_name} must be a number",
        )
        overrides[tier] = float(value)

    requirements = []
    _expect(isinstance(doc["requirements"], list), "requirements must be a list")
    for entry in doc["requirements"]:
        _expect_keys(entry, {"id", "title"}, "requirement")
        _expect(isinstance(entry["id"], str) and entry["id"] != "", "requirement id must be a non-empty string")
        _expect(isinstance(entry["title"], str), "requirement title must be a string")
        requirements.append(Requirement(**entry))

    _expect_keys(doc["scores"], {"value", "urgency"}, "scores")
    tables: dict[Factor, dict[tuple[Tier, str], int]] = {}
    for factor in (Factor.VALUE, Factor.URGENCY):
        table: dict[tuple[Tier, str], int] = {}
        section = doc["scores"][factor.value]
        _expect(isinstance(section, dict), f"scores.{factor.value} must be an object")
        for tier_name, row in section.items():
            tier = _parse_tier(tier_name, f"scores.{factor.value}")
            _expect(isinstance(row, dict), f"scores.{factor.value}.{tier_name} must be an object")
            for rid, value in row.items():
                _expect(
                    isinstance(value, int) and not isinstance(value, bool),
                    f"score for {tier_name}/{rid} must be an integer",
                )
                table[(tier, rid)] = value
        tables[factor] = table

    session = Session(
        schema_version=version,
        name=doc["name"],
        stakeholders=tuple(stakeholders),
        judgments={t: p for t, p in judgments.items()},
        priority_overrides=overrides,
        requirements=tuple(requirements),
        value_scores=tables[Factor.VALUE],
        urgency_scores=tables[Factor.URGENCY],
    )

    if "derived" in doc:
        stored = doc["derived"]
        _expect(isinstance(stored, dict), "derived must be an object")
        try:
            recomputed = compute(session)
        except ValidationFailedError:
            _warnings.warn(
                "stored derived results dropped: session no longer validates",
                DerivedMismatchWarning,
                stacklevel=2,
            )
        else:
            if _derived_doc(recomputed) != stored:
                _warnings.warn(
                    "stored derived results disagree with recomputation; "
                    "using the fresh results",
                    DerivedMismatchWarning,
                    stacklevel=2,
                )
            session = replace(session, derived=recomputed)
    return session


def load_path(path: str | os.PathLike) -> Session:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        from .errors import IoError

        raise IoError(f"cannot read {path}: {exc}") from exc
    return load(data)


def save_path(s: Session, path: str | os.PathLike) -> None:
    path = Path(path)
    data = save(s)
    tmp = path.with_name(path.name + ".tmp")
    try:
        tmp.write_bytes(data)
        os.replace(tmp, path)
    except OSError as exc:
        from .errors import IoError

        raise IoError(f"cannot write {path}: {exc}") from exc


# --- export ---


def ranking_csv(s: Session) -> str:
    """Ranking as CSV: requirement_id, title, value/urgency/total, rank.

    Numbers carry four decimal places; rows appear in rank order.
    """
    derived = fresh_derived(s) or compute(s)
    titles = {r.id: r.title for r in s.requirements}
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["requirement_id", "title", "value_weight", "urgency_weight", "total", "rank"]
    )
    for i, w in enumerate(derived.ranking.entries):
        writer.writerow(
            [
                w.requirement_id,
                titles.get(w.requirement_id, ""),
                f"{w.value_weight:.4f}",
                f"{w.urgency_weight:.4f}",
                f"{w.total:.4f}",
                i + 1,
            ]
        )
    return buf.getvalue()
