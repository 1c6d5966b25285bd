"""Attribute-based tier classification and group priorities."""

from fractions import Fraction

import pytest

from salientrank.ahp import matrix_from_pairs
from salientrank.errors import (
    DuplicateIdError,
    LabelMismatchError,
    MissingMatrixError,
    NegativePriorityError,
)
from salientrank.salience import (
    TIERS,
    StakeholderRecord,
    Tier,
    classify,
    group_members,
    group_priority,
    tier_from_name,
)

from conftest import SAMPLE_ATTRIBUTES, SAMPLE_ORDER, sample_matrix


def record(sid="x", power=False, legitimacy=False, urgency=False):
    return StakeholderRecord(
        id=sid, name=sid, power=power, legitimacy=legitimacy, urgency=urgency
    )


def test_classification_counts_attributes():
    # all eight attribute combinations
    assert classify(record()) is None
    assert classify(record(power=True)) is Tier.LATENT
    assert classify(record(legitimacy=True)) is Tier.LATENT
    assert classify(record(urgency=True)) is Tier.LATENT
    assert classify(record(power=True, legitimacy=True)) is Tier.EXPECTANT
    assert classify(record(power=True, urgency=True)) is Tier.EXPECTANT
    assert classify(record(legitimacy=True, urgency=True)) is Tier.EXPECTANT
    assert classify(record(power=True, legitimacy=True, urgency=True)) is Tier.DEFINITIVE


def test_tier_weights():
    assert Tier.LATENT.weight == 1
    assert Tier.EXPECTANT.weight == 2
    assert Tier.DEFINITIVE.weight == 3
    assert TIERS == (Tier.LATENT, Tier.EXPECTANT, Tier.DEFINITIVE)


def test_tier_from_name():
    assert tier_from_name("latent") is Tier.LATENT
    assert tier_from_name("definitive") is Tier.DEFINITIVE
    with pytest.raises(LabelMismatchError, match="unknown"):
        tier_from_name("critical")


def test_grouping_partitions_sample_dataset():
    records = [
        record(sid, *SAMPLE_ATTRIBUTES[sid]) for sid in SAMPLE_ORDER
    ]
    grouped = group_members(records)
    assert grouped.groups[Tier.LATENT].members == ("s1", "s4", "s5")
    assert grouped.groups[Tier.EXPECTANT].members == ("s2", "s3", "s7", "s9")
    assert grouped.groups[Tier.DEFINITIVE].members == ("s6", "s8", "s10")
    assert grouped.excluded == ()


def test_grouping_preserves_input_order_and_excludes_zero_attribute_records():
    records = [
        record("b", power=True),
        record("none1"),
        record("a", power=True),
        record("none2"),
    ]
    grouped = group_members(records)
    assert grouped.groups[Tier.LATENT].members == ("b", "a")
    assert grouped.excluded == ("none1", "none2")


def test_grouping_rejects_duplicate_ids():
    with pytest.raises(DuplicateIdError):
        group_members([record("a", power=True), record("a", urgency=True)])


def test_group_priority_from_matrix():
    records = [record(sid, *SAMPLE_ATTRIBUTES[sid]) for sid in ("s1", "s4", "s5")]
    group = group_members(records).groups[Tier.LATENT]
    gp = group_priority(group, sample_matrix())
    assert gp.mean_weight == pytest.approx(1 / 3, abs=1e-12)
    assert gp.priority == pytest.approx(1 / 3, abs=1e-12)  # tier weight 1
    assert gp.member_weights["s1"] == pytest.approx(0.52, abs=0.01)
    assert gp.member_weights["s4"] == pytest.approx(0.36, abs=0.01)
    assert gp.member_weights["s5"] == pytest.approx(0.13, abs=0.01)


def test_mean_of_normalized_weights_is_one_over_n():
    """Member weights sum to 1, so the mean is 1/n for any judgments."""
    import random

    rng = random.Random(42)
    scale = [Fraction(k) for k in range(1, 10)] + [Fraction(1, k) for k in range(2, 10)]
    for _ in range(50):
        n = rng.randint(2, 6)
        ids = [f"m{i}" for i in range(n)]
        records = [record(sid, power=True) for sid in ids]
        group = group_members(records).groups[Tier.LATENT]
        judgments = {
            (ids[i], ids[j]): rng.choice(scale)
            for i in range(n)
            for j in range(i + 1, n)
        }
        gp = group_priority(group, matrix_from_pairs(tuple(ids), judgments))
        assert gp.mean_weight == pytest.approx(1 / n, abs=1e-9)
        assert gp.priority == pytest.approx(1 / n, abs=1e-9)


def test_group_priority_tier_weight_scaling():
    records = [record("a", power=True, legitimacy=True), record("b", power=True, legitimacy=True)]
    group = group_members(records).groups[Tier.EXPECTANT]
    m = matrix_from_pairs(("a", "b"), {("a", "b"): Fraction(3)})
    gp = group_priority(group, m)
    assert gp.group_weight == 2
    assert gp.priority == pytest.approx(2 * 0.5, abs=1e-12)


def test_override_takes_precedence():
    records = [record(sid, *SAMPLE_ATTRIBUTES[sid]) for sid in ("s1", "s4", "s5")]
    group = group_members(records).groups[Tier.LATENT]
    gp = group_priority(group, sample_matrix(), override=0.33)
    assert gp.priority == 0.33
    assert gp.override == 0.33
    assert gp.mean_weight == pytest.approx(1 / 3, abs=1e-12)  # still reported


def test_override_without_matrix():
    records = [record("a", power=True), record("b", power=True)]
    group = group_members(records).groups[Tier.LATENT]
    gp = group_priority(group, override=0.4)
    assert gp.priority == 0.4
    assert gp.member_weights == {}


def test_single_member_group_needs_no_matrix():
    group = group_members([record("solo", urgency=True)]).groups[Tier.LATENT]
    gp = group_priority(group)
    assert gp.member_weights == {"solo": 1.0}
    assert gp.priority == pytest.approx(1.0, abs=1e-12)


def test_empty_group_has_zero_priority():
    group = group_members([]).groups[Tier.DEFINITIVE]
    gp = group_priority(group)
    assert gp.priority == 0.0
    assert gp.member_weights == {}


def test_missing_matrix_is_an_error_for_multi_member_groups():
    records = [record("a", power=True), record("b", power=True)]
    group = group_members(records).groups[Tier.LATENT]
    with pytest.raises(MissingMatrixError):
        group_priority(group)


def test_matrix_labels_must_match_group_members():
    records = [record("a", power=True), record("b", power=True)]
    group = group_members(records).groups[Tier.LATENT]
    m = matrix_from_pairs(("a", "z"), {("a", "z"): Fraction(2)})
    with pytest.raises(LabelMismatchError):
        group_priority(group, m)


def test_negative_override_rejected():
    group = group_members([record("a", power=True)]).groups[Tier.LATENT]
    with pytest.raises(NegativePriorityError):
        group_priority(group, override=-0.1)
