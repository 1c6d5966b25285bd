"""Local HTTP API for the elicitation UI.

JSON envelope on every response: {"ok": true, "data": ...} or
{"ok": false, "error": {"code", "message", "details"}}. Responses are
canonical JSON, so identical state yields byte-identical bodies. Writes to
one session are serialized by a per-session lock; reads serve immutable
snapshots without locking.
"""

from __future__ import annotations

import json
import os
import threading
import uuid
import warnings as _warnings
from pathlib import Path
from typing import Callable

from fastapi import Depends, FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from starlette.exceptions import HTTPException as StarletteHTTPException

from . import session as sess
from .ahp import (
    matrix_from_pairs,
    missing_pairs,
    most_inconsistent_triad,
    parse_judgment,
    principal_eigen,
)
from .errors import (
    DomainError,
    IoError,
    MalformedDocumentError,
    SalientrankError,
    UnknownEntityError,
    UsageError,
    ValidationFailedError,
)
from .salience import TIERS, StakeholderRecord, Tier, classify
from .scoring import Factor, Requirement
from .session import FILE_SUFFIX, Session

DEFAULT_LISTEN = "127.0.0.1:8642"
DEFAULT_DATA_DIR = "./sessions"


class SessionStore:
    """In-memory session registry persisted as one file per session."""

    def __init__(self, data_dir: Path):
        self.data_dir = data_dir
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self._sessions: dict[str, Session] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()
        self._scan()

    def _scan(self) -> None:
        for path in sorted(self.data_dir.glob(f"*{FILE_SUFFIX}")):
            sid = path.name[: -len(FILE_SUFFIX)]
            try:
                self._sessions[sid] = sess.load_path(path)
            except SalientrankError as exc:
                _warnings.warn(f"skipping {path}: {exc}", stacklevel=2)

    def _path(self, sid: str) -> Path:
        return self.data_dir / f"{sid}{FILE_SUFFIX}"

    def _lock_for(self, sid: str) -> threading.Lock:
        with self._registry_lock:
            return self._locks.setdefault(sid, threading.Lock())

    def ids(self) -> list[str]:
        return sorted(self._sessions)

    def get(self, sid: str) -> Session:
        try:
            return self._sessions[sid]
        except KeyError:
            raise UnknownEntityError(f"unknown session '{sid}'") from None

    def create(self, name: str) -> tuple[str, Session]:
        with self._registry_lock:
            while True:
                sid = uuid.uuid4().hex[:12]
                if sid not in self._sessions and not self._path(sid).exists():
                    break
            s = sess.new_session(name)
            sess.save_path(s, self._path(sid))
            self._sessions[sid] = s
            return sid, s

    def delete(self, sid: str) -> None:
        with self._lock_for(sid):
            self.get(sid)
            with self._registry_lock:
                del self._sessions[sid]
            try:
                os.remove(self._path(sid))
            except FileNotFoundError:
                pass
            except OSError as exc:
                raise IoError(f"cannot remove {self._path(sid)}: {exc}") from exc

    def mutate(self, sid: str, fn: Callable[[Session], Session]) -> Session:
        with self._lock_for(sid):
            current = self.get(sid)
            updated = fn(current)
            if updated is not current:
                sess.save_path(updated, self._path(sid))
                self._sessions[sid] = updated
            return updated


# --- payload helpers ---


def _judgment_payload(a: str, b: str, value) -> dict:
    return {
        "a": a,
        "b": b,
        "value": str(value),
        "numerator": value.numerator,
        "denominator": value.denominator,
    }


def _result_payload(members, result) -> dict:
    return {
        "member_weights": {sid: w for sid, w in zip(members, result.priorities)},
        "lambda_max": result.lambda_max,
        "consistency_index": result.consistency_index,
        "consistency_ratio": result.consistency_ratio,
        "consistent": result.consistent,
    }


def _triad_payload(triad) -> dict | None:
    if triad is None:
        return None
    members, error = triad
    return {"members": list(members), "error": error}


def _group_state(s: Session, tier: Tier) -> dict:
    """Live matrix state for one tier: progress, result, worst triad."""
    members = sess.tier_members(s).groups[tier].members
    judgments = s.judgments.get(tier, {})
    relevant = {
        p: v for p, v in judgments.items() if p[0] in members and p[1] in members
    }
    missing = missing_pairs(members, relevant)
    total = len(members) * (len(members) - 1) // 2
    state = {
        "group": tier.value,
        "members": list(members),
        "judgments": [
            _judgment_payload(a, b, relevant[(a, b)])
            for a, b in sorted(
                relevant, key=lambda p: (members.index(p[0]), members.index(p[1]))
            )
        ],
        "progress": {"filled": total - len(missing), "total": total},
        "missing": [list(pair) for pair in missing],
        "result": None,
        "worst_triad": None,
    }
    if len(members) >= 2 and not missing:
        matrix = matrix_from_pairs(members, relevant)
        state["result"] = _result_payload(members, principal_eigen(matrix))
        state["worst_triad"] = _triad_payload(most_inconsistent_triad(matrix))
    return state


def _session_payload(sid: str, s: Session) -> dict:
    grouped = sess.tier_members(s)
    return {
        "id": sid,
        "name": s.name,
        "schema_version": s.schema_version,
        "stakeholders": [
            {
                "id": r.id,
                "name": r.name,
                "power": r.power,
                "legitimacy": r.legitimacy,
                "urgency": r.urgency,
                "tier": tier.value if (tier := classify(r)) else None,
            }
            for r in s.stakeholders
        ],
        "excluded": list(grouped.excluded),
        "groups": {tier.value: _group_state(s, tier) for tier in TIERS},
        "priority_overrides": {
            tier.value: value for tier, value in s.priority_overrides.items()
        },
        "requirements": [{"id": r.id, "title": r.title} for r in s.requirements],
        "scores": {
            factor.value: _score_grid(s, factor) for factor in (Factor.VALUE, Factor.URGENCY)
        },
    }


def _score_grid(s: Session, factor: Factor) -> dict:
    grid: dict[str, dict[str, int]] = {}
    for (tier, rid), value in s.scores_for(factor).items():
        grid.setdefault(tier.value, {})[rid] = value
    return grid


def _summary_payload(sid: str, s: Session) -> dict:
    return {
        "id": sid,
        "name": s.name,
        "stakeholders": len(s.stakeholders),
        "requirements": len(s.requirements),
    }


def _priorities_payload(s: Session) -> dict:
    priorities, consistency = sess.group_priorities(s)
    groups = {}
    for tier in TIERS:
        gp = priorities[tier]
        entry = {
            "members": list(gp.member_weights),
            "member_weights": dict(gp.member_weights),
            "mean_weight": gp.mean_weight,
            "group_weight": gp.group_weight,
            "override": gp.override,
            "priority": gp.priority,
            "consistency": None,
            "worst_triad": None,
        }
        result = consistency.get(tier)
        if result is not None:
            members = tuple(gp.member_weights)
            entry["consistency"] = _result_payload(members, result)
            relevant = {
                p: v
                for p, v in s.judgments.get(tier, {}).items()
                if p[0] in members and p[1] in members
            }
            matrix = matrix_from_pairs(members, relevant)
            entry["worst_triad"] = _triad_payload(most_inconsistent_triad(matrix))
        groups[tier.value] = entry
    return {"groups": groups}


def _ranking_payload(s: Session) -> dict:
    derived = sess.fresh_derived(s) or sess.compute(s)
    titles = {r.id: r.title for r in s.requirements}
    return {
        "priorities": {
            tier.value: gp.priority for tier, gp in derived.group_priorities.items()
        },
        "entries": [
            {
                "requirement_id": w.requirement_id,
                "title": titles.get(w.requirement_id, ""),
                "value_weight": w.value_weight,
                "urgency_weight": w.urgency_weight,
                "total": w.total,
                "rank": i + 1,
            }
            for i, w in enumerate(derived.ranking.entries)
        ],
        "ties": [list(cluster) for cluster in derived.ranking.ties],
        "warnings": list(derived.warnings),
    }


# --- request parsing ---


def _parse_body(raw: bytes) -> dict:
    try:
        doc = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise MalformedDocumentError(f"request body is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise MalformedDocumentError("request body must be a JSON object")
    return doc


def _check_fields(doc: dict, allowed: set[str], required: set[str]) -> None:
    missing = required - doc.keys()
    if missing:
        raise MalformedDocumentError(
            f"request body missing field(s): {', '.join(sorted(missing))}"
        )
    unknown = doc.keys() - allowed
    if unknown:
        raise MalformedDocumentError(
            f"request body has unknown field(s): {', '.join(sorted(unknown))}"
        )


def _field(doc: dict, name: str, kind, default=None):
    if name not in doc:
        return default
    value = doc[name]
    if kind is bool and not isinstance(value, bool):
        raise MalformedDocumentError(f"field '{name}' must be a boolean")
    if kind is str and not isinstance(value, str):
        raise MalformedDocumentError(f"field '{name}' must be a string")
    if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise MalformedDocumentError(f"field '{name}' must be an integer")
    if kind is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise MalformedDocumentError(f"field '{name}' must be a number")
        value = float(value)
    return value


def _parse_tier(name: str) -> Tier:
    try:
        return Tier(name)
    except ValueError:
        raise UnknownEntityError(f"unknown group '{name}'") from None


def _parse_factor(name: str) -> Factor:
    try:
        return Factor(name)
    except ValueError:
        raise UnknownEntityError(f"unknown factor '{name}'") from None


def _tier_map(doc, field_name: str) -> dict[Tier, float]:
    section = doc.get(field_name) or {}
    if not isinstance(section, dict):
        raise MalformedDocumentError(f"field '{field_name}' must be an object")
    out: dict[Tier, float] = {}
    for tier_name, value in section.items():
        tier = _parse_tier(tier_name)
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise MalformedDocumentError(
                f"{field_name}.{tier_name} must be a number"
            )
        out[tier] = float(value)
    return out


# --- app ---


def _status_for(exc: SalientrankError) -> int:
    if isinstance(exc, UnknownEntityError):
        return 404
    if isinstance(exc, ValidationFailedError):
        return 422
    if isinstance(exc, (MalformedDocumentError, UsageError)):
        return 400
    if isinstance(exc, DomainError):
        return 409
    return 500


def _error_details(exc: SalientrankError):
    if isinstance(exc, ValidationFailedError):
        return {
            "errors": list(exc.report.errors),
            "warnings": list(exc.report.warnings),
        }
    missing = getattr(exc, "missing", None)
    if missing:
        return {"missing": [list(pair) for pair in missing]}
    return None


def _json_response(payload, status: int = 200) -> Response:
    return Response(
        content=sess.canonical_json(payload) + "\n",
        status_code=status,
        media_type="application/json",
    )


def _ok(data) -> Response:
    return _json_response({"ok": True, "data": data})


def _fail(code: str, message: str, status: int, details=None) -> Response:
    return _json_response(
        {"ok": False, "error": {"code": code, "message": message, "details": details}},
        status,
    )


async def _body(request: Request) -> bytes:
    return await request.body()


def create_app(
    data_dir: str | os.PathLike = DEFAULT_DATA_DIR,
    token: str | None = None,
    ui_dir: str | os.PathLike | None = None,
) -> FastAPI:
    app = FastAPI(title="salientrank", docs_url=None, redoc_url=None, openapi_url=None)
    store = SessionStore(Path(data_dir))
    app.state.store = store

    if token:
        @app.middleware("http")
        async def require_token(request: Request, call_next):
            # only the data routes are guarded; the UI shell is static and
            # carries no session content
            if request.url.path.startswith("/sessions") and (
                request.headers.get("authorization") != f"Bearer {token}"
            ):
                return _fail("UNAUTHORIZED", "missing or invalid bearer token", 401)
            return await call_next(request)

    @app.exception_handler(SalientrankError)
    async def on_domain_error(request: Request, exc: SalientrankError):
        return _fail(exc.code, str(exc), _status_for(exc), _error_details(exc))

    @app.exception_handler(StarletteHTTPException)
    async def on_http_error(request: Request, exc: StarletteHTTPException):
        return _fail(f"HTTP_{exc.status_code}", str(exc.detail), exc.status_code)

    @app.exception_handler(RequestValidationError)
    async def on_request_error(request: Request, exc: RequestValidationError):
        return _fail("MALFORMED_DOCUMENT", "malformed request", 400)

    @app.post("/sessions")
    def create_session(raw: bytes = Depends(_body)):
        doc = _parse_body(raw)
        _check_fields(doc, {"name"}, {"name"})
        sid, s = store.create(_field(doc, "name", str))
        return _ok(_summary_payload(sid, s))

    @app.get("/sessions")
    def list_sessions():
        return _ok(
            {"sessions": [_summary_payload(sid, store.get(sid)) for sid in store.ids()]}
        )

    @app.get("/sessions/{sid}")
    def get_session(sid: str):
        return _ok(_session_payload(sid, store.get(sid)))

    @app.delete("/sessions/{sid}")
    def delete_session(sid: str):
        store.delete(sid)
        return _ok({"deleted": sid})

    @app.put("/sessions/{sid}/stakeholders/{stakeholder_id}")
    def put_stakeholder(sid: str, stakeholder_id: str, raw: bytes = Depends(_body)):
        doc = _parse_body(raw)
        _check_fields(
            doc, {"name", "power", "legitimacy", "urgency"}, {"name"}
        )
        record = StakeholderRecord(
            id=stakeholder_id,
            name=_field(doc, "name", str),
            power=_field(doc, "power", bool, False),
            legitimacy=_field(doc, "legitimacy", bool, False),
            urgency=_field(doc, "urgency", bool, False),
        )
        s = store.mutate(sid, lambda cur: sess.upsert_stakeholder(cur, record))
        tier = classify(record)
        return _ok(
            {
                "id": record.id,
                "name": record.name,
                "power": record.power,
                "legitimacy": record.legitimacy,
                "urgency": record.urgency,
                "tier": tier.value if tier else None,
                "excluded": tier is None,
            }
        )

    @app.put("/sessions/{sid}/groups/{tier_name}/judgments/{id_a}/{id_b}")
    def put_judgment(
        sid: str, tier_name: str, id_a: str, id_b: str, raw: bytes = Depends(_body)
    ):
        tier = _parse_tier(tier_name)
        doc = _parse_body(raw)
        _check_fields(doc, {"judgment"}, {"judgment"})
        value = doc["judgment"]
        if isinstance(value, bool) or not isinstance(value, (int, float, str)):
            raise MalformedDocumentError(
                "field 'judgment' must be a number or a fraction string"
            )
        judgment, original = parse_judgment(value)
        s = store.mutate(
            sid, lambda cur: sess.set_judgment(cur, tier, id_a, id_b, judgment)
        )
        state = _group_state(s, tier)
        state["pair"] = [id_a, id_b]
        state["snapped_from"] = str(original) if original is not None else None
        return _ok(state)

    @app.put("/sessions/{sid}/requirements/{rid}")
    def put_requirement(sid: str, rid: str, raw: bytes = Depends(_body)):
        doc = _parse_body(raw)
        _check_fields(doc, {"title"}, {"title"})
        req = Requirement(id=rid, title=_field(doc, "title", str))
        sess_after = store.mutate(sid, lambda cur: sess.upsert_requirement(cur, req))
        return _ok({"id": req.id, "title": req.title, "requirements": len(sess_after.requirements)})

    @app.put("/sessions/{sid}/scores/{factor_name}/{tier_name}/{rid}")
    def put_score(
        sid: str, factor_name: str, tier_name: str, rid: str, raw: bytes = Depends(_body)
    ):
        factor = _parse_factor(factor_name)
        tier = _parse_tier(tier_name)
        doc = _parse_body(raw)
        _check_fields(doc, {"score"}, {"score"})
        score = _field(doc, "score", int)
        s = store.mutate(sid, lambda cur: sess.set_score(cur, factor, tier, rid, score))
        grid = _score_grid(s, factor)
        filled = sum(len(row) for row in grid.values())
        return _ok(
            {
                "factor": factor.value,
                "group": tier.value,
                "requirement_id": rid,
                "score": score,
                "filled": filled,
            }
        )

    @app.put("/sessions/{sid}/overrides/{tier_name}")
    def put_override(sid: str, tier_name: str, raw: bytes = Depends(_body)):
        tier = _parse_tier(tier_name)
        doc = _parse_body(raw)
        _check_fields(doc, {"priority"}, {"priority"})
        value = doc["priority"]
        if value is not None:
            value = _field(doc, "priority", float)
        s = store.mutate(sid, lambda cur: sess.set_override(cur, tier, value))
        return _ok(
            {
                "group": tier.value,
                "priority": s.priority_overrides.get(tier),
            }
        )

    @app.get("/sessions/{sid}/priorities")
    def get_priorities(sid: str):
        return _ok(_priorities_payload(store.get(sid)))

    @app.get("/sessions/{sid}/ranking")
    def get_ranking(sid: str):
        return _ok(_ranking_payload(store.get(sid)))

    @app.post("/sessions/{sid}/whatif")
    def post_whatif(sid: str, raw: bytes = Depends(_body)):
        doc = _parse_body(raw)
        _check_fields(doc, {"priorities", "group_weights"}, set())
        s = store.get(sid)
        priorities = _tier_map(doc, "priorities")
        group_weights = _tier_map(doc, "group_weights")
        result = sess.what_if(s, priorities=priorities, group_weights=group_weights)
        titles = {r.id: r.title for r in s.requirements}
        return _ok(
            {
                "entries": [
                    {
                        "requirement_id": w.requirement_id,
                        "title": titles.get(w.requirement_id, ""),
                        "value_weight": w.value_weight,
                        "urgency_weight": w.urgency_weight,
                        "total": w.total,
                        "rank": i + 1,
                    }
                    for i, w in enumerate(result.ranking.entries)
                ],
                "ties": [list(cluster) for cluster in result.ranking.ties],
                "deltas": dict(result.deltas),
            }
        )

    @app.get("/sessions/{sid}/validation")
    def get_validation(sid: str):
        report = sess.validate(store.get(sid))
        return _ok(
            {
                "ok": report.ok,
                "errors": list(report.errors),
                "warnings": list(report.warnings),
            }
        )

    if ui_dir is not None:
        from starlette.staticfiles import StaticFiles

        # registered last so every /sessions route wins over the catch-all
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app


def _split_listen(listen: str) -> tuple[str, int]:
    host, sep, port = listen.rpartition(":")
    if not sep:
        raise UsageError(f"--listen expects HOST:PORT, got '{listen}'")
    host = host or "127.0.0.1"
    try:
        return host, int(port)
    except ValueError:
        raise UsageError(f"--listen port '{port}' is not a number") from None


def serve(
    listen: str | None = None,
    token: str | None = None,
    data_dir: str | None = None,
    ui_dir: str | None = None,
) -> int:
    """Run the API with uvicorn; flags fall back to environment variables."""
    import uvicorn

    listen = listen or os.environ.get("SALIENTRANK_LISTEN") or DEFAULT_LISTEN
    if token is None:
        token = os.environ.get("SALIENTRANK_TOKEN")
    if ui_dir is None:
        ui_dir = os.environ.get("SALIENTRANK_UI")
    host, port = _split_listen(listen)
    app = create_app(data_dir=data_dir or DEFAULT_DATA_DIR, token=token, ui_dir=ui_dir)
    uvicorn.run(app, host=host, port=port, log_level="warning")
    return 0


def main(argv=None) -> int:
    from .cli import main as cli_main

    return cli_main(["serve"] + list(argv or []))


if __name__ == "__main__":
    import sys

    sys.exit(main(sys.argv[1:]))
