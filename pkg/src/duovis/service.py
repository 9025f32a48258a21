"""HTTP + server-push API over engine sessions.

The service adds transport only: every command funnels into the same
engine entry points the CLI uses, serialized per session under the session
lock. Responses are rendered with the canonical JSON encoder so a scripted
run over HTTP is byte-identical to an in-process run.

Event stream: ``GET /sessions/{id}/events`` is server-sent events; every
committed revision produces exactly one ``spec_changed`` event on each open
stream, in order.
"""

from __future__ import annotations

import os
import queue
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.responses import Response, StreamingResponse

from . import history, mvs, recommend
from .canonical import (
    canonical_dumps,
    parse_demonstration,
    spec_json,
    view_json,
    widget_json,
)
from .dataset import Dataset, attribute_stats, load_csv
from .errors import (
    EngineError,
    IllegalChange,
    MissingAxes,
    StaleRevision,
    UnknownRecommendation,
    UnknownSession,
)
from .intent import RankingWeights
from .recommend import rec_set_json
from .session import Session
from .viewmodel import render
from .widgets import widgets_for_spec

STATUS_BY_CODE = {
    "unknown_session": 404,
    "unknown_rule": 404,
    "unknown_recommendation": 404,
    "unknown_category": 404,
    "stale_revision": 409,
    "expired": 409,
    "nothing_to_undo": 409,
    "nothing_to_redo": 409,
    "malformed_csv": 422,
    "duplicate_attribute_name": 422,
    "unknown_attribute": 422,
    "illegal_change": 422,
    "invalid_spec": 422,
    "missing_axes": 422,
    "out_of_domain": 422,
    "wrong_vis_type": 422,
    "channel_unbound": 422,
    "required_channel": 422,
    "invalid_demonstration": 422,
    "empty_selection": 422,
    "script_error": 422,
}


def _json_response(payload, status_code: int = 200) -> Response:
    return Response(
        content=canonical_dumps(payload),
        media_type="application/json",
        status_code=status_code,
    )


def _error_response(exc: EngineError) -> Response:
    status = STATUS_BY_CODE.get(exc.code, 400)
    return _json_response(
        {"error": {"code": exc.code, "message": exc.message}}, status
    )


class ServiceState:
    def __init__(self, data_dir: Optional[str] = None):
        self.data_dir = data_dir or os.environ.get("LIGER_DATA_DIR") or "data"
        self.sessions: dict[str, Session] = {}

    def session(self, session_id: str) -> Session:
        try:
            return self.sessions[session_id]
        except KeyError:
            raise UnknownSession(f"no session {session_id!r}") from None

    def find_recommendation(self, rec_id: str) -> Session:
        """Resolve the session whose pending set holds ``rec_id`` (the
        spec-level recommendation routes are session-free)."""
        for session in self.sessions.values():
            pending = session.pending
            if pending and any(r.rec_id == rec_id for r in pending.recommendations):
                return session
        raise UnknownRecommendation(f"no recommendation {rec_id!r}")

    def load_dataset(self, body: dict) -> Dataset:
        if "csv" in body:
            return load_csv(
                body["csv"].encode("utf-8"), dataset_id=body.get("dataset_id", "upload")
            )
        name = body.get("dataset") or body.get("dataset_path")
        if not name:
            raise IllegalChange("session needs 'dataset', 'dataset_path', or 'csv'")
        path = Path(name)
        if not path.is_absolute():
            path = Path(self.data_dir) / path
        if not path.exists():
            raise UnknownSession(f"dataset {name!r} not found in data directory")
        return load_csv(path)


def _dataset_summary(dataset: Dataset) -> dict:
    return {
        "id": dataset.id,
        "row_count": dataset.row_count,
        "attributes": [
            {
                "name": a.name,
                "kind": a.kind,
                "discrete": a.discrete,
                **attribute_stats(dataset, a.name),
            }
            for a in dataset.attributes
        ],
    }


def _view_or_none(session: Session) -> Optional[dict]:
    try:
        return view_json(render(session.spec, session.dataset))
    except MissingAxes:
        return None


def _state_payload(session: Session, **extra) -> dict:
    payload = {
        "revision": session.spec.revision,
        "spec": spec_json(session.spec),
        "view": _view_or_none(session),
    }
    payload.update(extra)
    return payload


def _check_revision(session: Session, body: dict) -> None:
    expected = body.get("revision")
    if expected is not None and expected != session.spec.revision:
        raise StaleRevision(
            f"request built against revision {expected}, "
            f"session is at {session.spec.revision}"
        )


def create_app(data_dir: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="duovis", version="0.1.0")
    state = ServiceState(data_dir)
    app.state.engine = state

    @app.exception_handler(EngineError)
    async def engine_error_handler(_request: Request, exc: EngineError):
        return _error_response(exc)

    @app.post("/sessions")
    async def create_session(request: Request):
        body = await request.json()
        dataset = state.load_dataset(body)
        weights = body.get("ranking_weights")
        session = Session(
            dataset,
            weights=RankingWeights(**weights) if weights else RankingWeights(),
        )
        state.sessions[session.id] = session
        return _json_response(
            {
                "session_id": session.id,
                "dataset": _dataset_summary(dataset),
                **_state_payload(session),
            }
        )

    @app.get("/sessions/{sid}/spec")
    async def get_spec(sid: str):
        session = state.session(sid)
        return _json_response(spec_json(session.spec))

    @app.get("/sessions/{sid}/view")
    async def get_view(sid: str):
        session = state.session(sid)
        return _json_response(_view_or_none(session))

    @app.get("/sessions/{sid}/dataset")
    async def get_dataset(sid: str):
        session = state.session(sid)
        return _json_response(_dataset_summary(session.dataset))

    @app.get("/sessions/{sid}/filters")
    async def get_filters(sid: str):
        session = state.session(sid)
        widgets = widgets_for_spec(session.spec, session.dataset)
        return _json_response([widget_json(w) for w in widgets])

    @app.get("/sessions/{sid}/recommendations")
    async def get_recommendations(sid: str, full: bool = False):
        session = state.session(sid)
        return _json_response(rec_set_json(session.pending, full=full))

    @app.post("/sessions/{sid}/ops/{verb}")
    async def run_op(sid: str, verb: str, request: Request):
        session = state.session(sid)
        body = await request.json()
        with session.lock:
            _check_revision(session, body)
            extra: dict = {}
            if verb == "set_axis":
                result = mvs.set_axis(session, body["channel"], body["attribute"])
            elif verb == "set_mark":
                result = mvs.set_mark_encoding(
                    session, body["channel"], body["attribute"]
                )
            elif verb == "switch":
                result = mvs.switch_vis_type(session, body["target"])
                extra["dropped"] = list(result.dropped)
            elif verb == "filter":
                result = mvs.add_attribute_filter(session, body["attribute"])
            elif verb == "update_filter":
                if "range" in body:
                    lo, hi = body["range"]
                    result = mvs.update_filter_widget(
                        session, body["rule_id"], selected=(lo, hi)
                    )
                elif "checked" in body:
                    result = mvs.update_filter_widget(
                        session, body["rule_id"], checked=body["checked"]
                    )
                else:
                    raise IllegalChange("update_filter needs 'range' or 'checked'")
            elif verb == "sort":
                result = mvs.sort_bars(session, body["direction"])
            elif verb == "remove":
                result = mvs.remove_encoding(session, body["channel"])
            elif verb == "undo":
                history.undo(session)
                result = None
            elif verb == "redo":
                history.redo(session)
                result = None
            else:
                raise IllegalChange(f"unknown op {verb!r}")
            if result is not None and result.widget is not None:
                extra["widget"] = widget_json(result.widget)
            if result is not None and result.change is not None:
                extra["corollary"] = _corollary_json(session, result.change)
            return _json_response(_state_payload(session, **extra))

    @app.post("/sessions/{sid}/demonstrations")
    async def post_demonstration(sid: str, request: Request):
        session = state.session(sid)
        body = await request.json()
        demo = parse_demonstration(body)
        with session.lock:
            rec_set = recommend.generate(session, demo)
            return _json_response(rec_set_json(rec_set))

    async def _rec_action(session: Session, rid: str, action: str) -> Response:
        with session.lock:
            if action == "preview":
                view = recommend.preview(session, rid)
                return _json_response(view_json(view))
            if action == "accept":
                rec = session.pending.find(rid) if session.pending else None
                recommend.accept(session, rid)
                extra = {}
                if rec is not None:
                    extra["corollary"] = _corollary_json(session, rec.candidate.change)
                return _json_response(_state_payload(session, **extra))
            if action == "reject":
                recommend.reject(session, rid)
                return _json_response({"ok": True})
            raise IllegalChange(f"unknown recommendation action {action!r}")

    @app.post("/sessions/{sid}/recommendations/{rid}/{action}")
    async def rec_action(sid: str, rid: str, action: str):
        return await _rec_action(state.session(sid), rid, action)

    @app.post("/recommendations/{rid}/{action}")
    async def rec_action_global(rid: str, action: str):
        return await _rec_action(state.find_recommendation(rid), rid, action)

    @app.post("/sessions/{sid}/reject_all")
    async def reject_all(sid: str):
        session = state.session(sid)
        with session.lock:
            recommend.reject(session)
        return _json_response({"ok": True})

    @app.get("/sessions/{sid}/events")
    async def events(sid: str, limit: Optional[int] = None):
        session = state.session(sid)
        subscriber: queue.Queue = queue.Queue()
        session.add_listener(subscriber.put)

        def stream():
            sent = 0
            try:
                while limit is None or sent < limit:
                    try:
                        event = subscriber.get(timeout=15.0)
                    except queue.Empty:
                        yield ": keep-alive\n\n"
                        continue
                    data = {k: v for k, v in event.items() if k != "type"}
                    yield (
                        f"id: {event['seq']}\n"
                        f"event: {event['type']}\n"
                        f"data: {canonical_dumps(data)}\n\n"
                    )
                    sent += 1
            finally:
                session.remove_listener(subscriber.put)

        return StreamingResponse(stream(), media_type="text/event-stream")

    return app


def _corollary_json(session: Session, change) -> dict:
    updates = history.corollary_state(session, change)
    out: dict = {}
    if "filter_widgets" in updates:
        out["filter_widgets"] = [widget_json(w) for w in updates["filter_widgets"]]
    if "encoding_shelves" in updates:
        out["encoding_shelves"] = updates["encoding_shelves"]
    return out


app = create_app()
