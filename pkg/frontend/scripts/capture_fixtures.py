#!/usr/bin/env python3
"""Regenerate test fixtures from the real service.

The UI tests render from JSON captured here, so their expectations can never
drift from what the service actually sends. Rerun after changing service
payloads:

    python3 frontend/scripts/capture_fixtures.py
"""

import json
import sys
from pathlib import Path

from fastapi.testclient import TestClient

from salientrank.service import create_app

OUT = Path(__file__).resolve().parent.parent / "test" / "fixtures"

STAKEHOLDERS = [
    ("s1", "Stakeholder 1", {"power": True}),
    ("s2", "Stakeholder 2", {"power": True, "legitimacy": True}),
    ("s3", "Stakeholder 3", {"power": True, "legitimacy": True}),
    ("s4", "Stakeholder 4", {"power": True}),
    ("s5", "Stakeholder 5", {"legitimacy": True}),
    ("s6", "Stakeholder 6", {"power": True, "legitimacy": True, "urgency": True}),
    ("s7", "Stakeholder 7", {"legitimacy": True, "urgency": True}),
    ("s8", "Stakeholder 8", {"power": True, "legitimacy": True, "urgency": True}),
    ("s9", "Stakeholder 9", {"power": True, "urgency": True}),
    ("s10", "Stakeholder 10", {"power": True, "legitimacy": True, "urgency": True}),
    ("ghost", "No Attributes", {}),
]

JUDGMENTS = [("s1", "s4", 2), ("s1", "s5", 3), ("s4", "s5", 4)]

OVERRIDES = {"latent": 0.33, "expectant": 0.57, "definitive": 0.75}

VALUE_SCORES = {
    "latent": [4, 3, 2, 5, 3, 2, 1, 4],
    "expectant": [5, 3, 5, 4, 2, 4, 2, 2],
    "definitive": [4, 3, 5, 2, 1, 3, 2, 1],
}
URGENCY_SCORES = {
    "latent": [3, 4, 5, 1, 2, 3, 4, 2],
    "expectant": [5, 4, 2, 1, 3, 4, 2, 2],
    "definitive": [4, 3, 2, 5, 3, 2, 2, 3],
}


def unwrap(resp):
    doc = resp.json()
    assert doc["ok"], doc
    return doc["data"]


def dump(name: str, payload) -> None:
    OUT.joinpath(name).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    print(f"wrote {name}")


def main() -> int:
    OUT.mkdir(parents=True, exist_ok=True)
    import tempfile

    with tempfile.TemporaryDirectory() as tmp:
        client = TestClient(create_app(data_dir=tmp))
        sid = unwrap(client.post("/sessions", json={"name": "Fixture Project"}))["id"]

        for stakeholder_id, name, attrs in STAKEHOLDERS:
            unwrap(
                client.put(
                    f"/sessions/{sid}/stakeholders/{stakeholder_id}",
                    json={"name": name, **attrs},
                )
            )

        # comparison screen before any judgment: all pairs missing
        dump("session_before_judgments.json", unwrap(client.get(f"/sessions/{sid}")))

        last = None
        for a, b, judgment in JUDGMENTS:
            last = unwrap(
                client.put(
                    f"/sessions/{sid}/groups/latent/judgments/{a}/{b}",
                    json={"judgment": judgment},
                )
            )
        dump("judgment_complete.json", last)

        # a decimal entry that snaps to the nearest scale value
        snapped = unwrap(
            client.put(
                f"/sessions/{sid}/groups/latent/judgments/{'s1'}/{'s4'}",
                json={"judgment": 2.2},
            )
        )
        dump("judgment_snapped.json", snapped)
        unwrap(
            client.put(
                f"/sessions/{sid}/groups/latent/judgments/{'s1'}/{'s4'}",
                json={"judgment": 2},
            )
        )

        for tier, value in OVERRIDES.items():
            unwrap(client.put(f"/sessions/{sid}/overrides/{tier}", json={"priority": value}))
        for i in range(8):
            rid = f"Req{i + 1}"
            unwrap(
                client.put(
                    f"/sessions/{sid}/requirements/{rid}",
                    json={"title": f"Requirement {i + 1}"},
                )
            )
        for factor, table in (("value", VALUE_SCORES), ("urgency", URGENCY_SCORES)):
            for tier, row in table.items():
                for i, score in enumerate(row):
                    unwrap(
                        client.put(
                            f"/sessions/{sid}/scores/{factor}/{tier}/Req{i + 1}",
                            json={"score": score},
                        )
                    )

        dump("session_full.json", unwrap(client.get(f"/sessions/{sid}")))
        dump("priorities.json", unwrap(client.get(f"/sessions/{sid}/priorities")))
        ranking = unwrap(client.get(f"/sessions/{sid}/ranking"))
        dump("ranking.json", ranking)
        dump(
            "whatif_baseline.json",
            unwrap(
                client.post(
                    f"/sessions/{sid}/whatif", json={"priorities": ranking["priorities"]}
                )
            ),
        )
        dump(
            "whatif_silenced.json",
            unwrap(
                client.post(
                    f"/sessions/{sid}/whatif",
                    json={
                        "priorities": {
                            "latent": ranking["priorities"]["latent"],
                            "expectant": ranking["priorities"]["expectant"],
                            "definitive": 0,
                        }
                    },
                )
            ),
        )

        # inconsistent 3-member matrix: circular 9 / 9 / (1/9)
        sid2 = unwrap(client.post("/sessions", json={"name": "Inconsistent"}))["id"]
        for stakeholder_id in ("a", "b", "c"):
            unwrap(
                client.put(
                    f"/sessions/{sid2}/stakeholders/{stakeholder_id}",
                    json={"name": stakeholder_id.upper(), "power": True},
                )
            )
        for a, b, judgment in (("a", "b", 9), ("b", "c", 9), ("a", "c", "1/9")):
            last = unwrap(
                client.put(
                    f"/sessions/{sid2}/groups/latent/judgments/{a}/{b}",
                    json={"judgment": judgment},
                )
            )
        dump("judgment_inconsistent.json", last)
        dump("session_inconsistent.json", unwrap(client.get(f"/sessions/{sid2}")))
    return 0


if __name__ == "__main__":
    sys.exit(main())
