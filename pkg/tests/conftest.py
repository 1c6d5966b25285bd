"""Shared fixtures: the worked sample dataset used across the suite.

Ten stakeholders split into the three salience tiers, one fully-entered
3x3 comparison matrix for the latent tier, direct priority overrides for
all three tiers, and eight requirements scored 1-5 for value and urgency.
Expected numbers were computed by hand with exact arithmetic before the
implementation existed.
"""

from fractions import Fraction

import pytest

from salientrank import Requirement, StakeholderRecord
from salientrank import session as sess
from salientrank.ahp import ComparisonMatrix, matrix_from_pairs
from salientrank.salience import Tier
from salientrank.scoring import Factor

# id -> (power, legitimacy, urgency); yields latent {s1,s4,s5},
# expectant {s2,s3,s7,s9}, definitive {s6,s8,s10}
SAMPLE_ATTRIBUTES = {
    "s1": (True, False, False),
    "s2": (True, True, False),
    "s3": (True, True, False),
    "s4": (True, False, False),
    "s5": (False, True, False),
    "s6": (True, True, True),
    "s7": (False, True, True),
    "s8": (True, True, True),
    "s9": (True, False, True),
    "s10": (True, True, True),
}

SAMPLE_ORDER = ("s1", "s2", "s3", "s4", "s5", "s6", "s7", "s8", "s9", "s10")

LATENT_JUDGMENTS = (
    ("s1", "s4", Fraction(2)),
    ("s1", "s5", Fraction(3)),
    ("s4", "s5", Fraction(4)),
)

SAMPLE_OVERRIDES = {Tier.LATENT: 0.33, Tier.EXPECTANT: 0.57, Tier.DEFINITIVE: 0.75}

# rid -> (latent, expectant, definitive)
VALUE_SCORES = {
    "Req1": (4, 5, 4),
    "Req2": (3, 3, 3),
    "Req3": (2, 5, 5),
    "Req4": (5, 4, 2),
    "Req5": (3, 2, 1),
    "Req6": (2, 4, 3),
    "Req7": (1, 2, 2),
    "Req8": (4, 2, 1),
}
URGENCY_SCORES = {
    "Req1": (3, 5, 4),
    "Req2": (4, 4, 3),
    "Req3": (5, 2, 2),
    "Req4": (1, 1, 5),
    "Req5": (2, 3, 3),
    "Req6": (3, 4, 2),
    "Req7": (4, 2, 2),
    "Req8": (2, 2, 3),
}

# hand-computed expectations for the sample dataset (exact to 1e-9)
EXPECTED_WEIGHTS = {
    "Req1": (7.17, 6.84, 14.01),
    "Req2": (4.95, 5.85, 10.80),
    "Req3": (7.26, 4.29, 11.55),
    "Req4": (5.43, 4.65, 10.08),
    "Req5": (2.88, 4.62, 7.50),
    "Req6": (5.19, 4.77, 9.96),
    "Req7": (2.97, 3.96, 6.93),
    "Req8": (3.21, 4.05, 7.26),
}
EXPECTED_RANKING = ("Req1", "Req3", "Req2", "Req4", "Req6", "Req5", "Req8", "Req7")

# power-iteration-independent eigen solution of the 3x3 sample matrix
EXPECTED_EIGENVECTOR = (0.51713362, 0.35856042, 0.12430596)
EXPECTED_LAMBDA_MAX = 3.1078473338549735
EXPECTED_CI = 0.053923666927486735
EXPECTED_CR = 0.09297183953014955


def sample_matrix() -> ComparisonMatrix:
    judgments = {(a, b): v for a, b, v in LATENT_JUDGMENTS}
    return matrix_from_pairs(("s1", "s4", "s5"), judgments)


def build_sample_session(with_overrides: bool = True) -> sess.Session:
    s = sess.new_session("sample")
    for sid in SAMPLE_ORDER:
        power, legitimacy, urgency = SAMPLE_ATTRIBUTES[sid]
        s = sess.add_stakeholder(
            s,
            StakeholderRecord(
                id=sid, name=sid.upper(), power=power, legitimacy=legitimacy, urgency=urgency
            ),
        )
    for a, b, judgment in LATENT_JUDGMENTS:
        s = sess.set_judgment(s, Tier.LATENT, a, b, judgment)
    if with_overrides:
        for tier, value in SAMPLE_OVERRIDES.items():
            s = sess.set_override(s, tier, value)
    for i in range(1, 9):
        s = sess.add_requirement(s, Requirement(id=f"Req{i}", title=f"Requirement {i}"))
    for factor, table in ((Factor.VALUE, VALUE_SCORES), (Factor.URGENCY, URGENCY_SCORES)):
        for rid, row in table.items():
            for tier, score in zip((Tier.LATENT, Tier.EXPECTANT, Tier.DEFINITIVE), row):
                s = sess.set_score(s, factor, tier, rid, score)
    return s


@pytest.fixture
def sample_session() -> sess.Session:
    return build_sample_session()


@pytest.fixture
def sample_3x3() -> ComparisonMatrix:
    return sample_matrix()
