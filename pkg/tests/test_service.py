import json
import threading

import pytest
from fastapi.testclient import TestClient

from duovis.service import create_app

from conftest import MINI8_CSV, TESTS

MINI8_TEXT = MINI8_CSV.read_text(encoding="utf-8")


@pytest.fixture
def client():
    app = create_app(data_dir=str(TESTS / "data"))
    with TestClient(app) as test_client:
        yield test_client


@pytest.fixture
def sid(client):
    response = client.post("/sessions", json={"csv": MINI8_TEXT})
    assert response.status_code == 200
    return response.json()["session_id"]


def _op(client, sid, verb, **body):
    return client.post(f"/sessions/{sid}/ops/{verb}", json=body)


def _bind_axes(client, sid):
    _op(client, sid, "set_axis", channel="x", attribute="Horsepower")
    _op(client, sid, "set_axis", channel="y", attribute="MPG")


def test_create_session_with_data_dir_reference(client):
    response = client.post("/sessions", json={"dataset": "mini8.csv"})
    assert response.status_code == 200
    payload = response.json()
    assert payload["revision"] == 0
    assert payload["dataset"]["row_count"] == 8
    assert payload["view"] is None


def test_create_session_unknown_dataset(client):
    response = client.post("/sessions", json={"dataset": "nope.csv"})
    assert response.status_code == 404


def test_spec_view_filters_roundtrip(client, sid):
    _bind_axes(client, sid)
    spec = client.get(f"/sessions/{sid}/spec").json()
    assert spec["revision"] == 2
    assert [b["attribute"] for b in spec["bindings"]] == ["Horsepower", "MPG"]
    view = client.get(f"/sessions/{sid}/view").json()
    assert len(view["marks"]) == 8
    assert client.get(f"/sessions/{sid}/filters").json() == []


def test_unknown_session_404(client):
    assert client.get("/sessions/nope/spec").status_code == 404


def test_op_response_carries_revision_and_view(client, sid):
    response = _op(client, sid, "set_axis", channel="x", attribute="Horsepower")
    payload = response.json()
    assert payload["revision"] == 1
    assert payload["view"] is None  # y still unbound
    response = _op(client, sid, "set_axis", channel="y", attribute="MPG")
    assert response.json()["view"] is not None


def test_stale_revision_409(client, sid):
    _bind_axes(client, sid)
    response = _op(
        client, sid, "set_mark", channel="color", attribute="Origin", revision=0
    )
    assert response.status_code == 409
    assert response.json()["error"]["code"] == "stale_revision"


def test_illegal_change_422(client, sid):
    response = _op(client, sid, "set_axis", channel="x", attribute="Origin")
    assert response.status_code == 422


def test_filter_op_returns_widget(client, sid):
    _bind_axes(client, sid)
    response = _op(client, sid, "filter", attribute="Origin")
    widget = response.json()["widget"]
    assert widget["kind"] == "checkbox"
    assert widget["values"] == ["J", "E", "U"]
    rule_id = widget["rule_id"]
    update = _op(client, sid, "update_filter", rule_id=rule_id, checked=["J"])
    assert update.json()["widget"]["checked"] == [True, False, False]
    assert len(update.json()["view"]["marks"]) == 2


def test_demonstration_flow_over_http(client, sid):
    _bind_axes(client, sid)
    demo = {
        "kind": "drag_out",
        "selection": {"rows": [0, 1, 2], "origin": "rubber-band"},
    }
    response = client.post(f"/sessions/{sid}/demonstrations", json=demo)
    assert response.status_code == 200
    divisions = response.json()["divisions"]
    assert divisions[0]["name"] == "Recommended Filters"
    recs = divisions[0]["recommendations"]
    assert len(recs) == 4

    rid = recs[0]["rec_id"]
    spec_before = client.get(f"/sessions/{sid}/spec").text
    preview = client.post(f"/sessions/{sid}/recommendations/{rid}/preview")
    assert preview.status_code == 200
    assert client.get(f"/sessions/{sid}/spec").text == spec_before

    accept = client.post(f"/sessions/{sid}/recommendations/{rid}/accept")
    assert accept.status_code == 200
    assert accept.json()["revision"] == 3
    assert len(accept.json()["view"]["marks"]) == 5

    again = client.post(f"/sessions/{sid}/recommendations/{rid}/accept")
    assert again.status_code == 409


def test_global_recommendation_route(client, sid):
    _bind_axes(client, sid)
    demo = {"kind": "drag_out", "selection": {"rows": [0], "origin": "click"}}
    recs = client.post(f"/sessions/{sid}/demonstrations", json=demo).json()
    rid = recs["divisions"][0]["recommendations"][0]["rec_id"]
    response = client.post(f"/recommendations/{rid}/preview")
    assert response.status_code == 200
    response = client.post(f"/recommendations/{rid}/reject")
    assert response.status_code == 200
    assert client.post(f"/recommendations/{rid}/preview").status_code in (404, 409)


def test_invalid_demonstration_422(client, sid):
    _bind_axes(client, sid)
    demo = {"kind": "drag_out", "selection": {"rows": [], "origin": "lasso"}}
    response = client.post(f"/sessions/{sid}/demonstrations", json=demo)
    assert response.status_code == 422


def test_undo_redo_over_http(client, sid):
    _bind_axes(client, sid)
    _op(client, sid, "set_mark", channel="color", attribute="Origin")
    spec_color = client.get(f"/sessions/{sid}/spec").json()
    _op(client, sid, "undo")
    spec_undone = client.get(f"/sessions/{sid}/spec").json()
    assert all(b["channel"] != "color" for b in spec_undone["bindings"])
    _op(client, sid, "redo")
    spec_redone = client.get(f"/sessions/{sid}/spec").json()
    spec_color.pop("revision"), spec_redone.pop("revision")
    assert spec_redone == spec_color


def test_event_stream_one_event_per_revision_in_order():
    import httpx

    from server_util import LiveServer

    app = create_app(data_dir=str(TESTS / "data"))
    with LiveServer(app) as server:
        base = server.base_url
        with httpx.Client(base_url=base, timeout=10) as http:
            sid = http.post("/sessions", json={"csv": MINI8_TEXT}).json()[
                "session_id"
            ]
            events = []
            ready = threading.Event()

            def listen():
                with httpx.Client(base_url=base, timeout=30) as stream_client:
                    with stream_client.stream(
                        "GET", f"/sessions/{sid}/events", params={"limit": 3}
                    ) as response:
                        ready.set()
                        current = {}
                        for line in response.iter_lines():
                            if line.startswith("event:"):
                                current["event"] = line.split(":", 1)[1].strip()
                            elif line.startswith("data:"):
                                current["data"] = json.loads(line.split(":", 1)[1])
                            elif line == "" and current:
                                events.append(current)
                                current = {}

            thread = threading.Thread(target=listen)
            thread.start()
            assert ready.wait(timeout=5)
            # subscription races the listener's first read; give it a beat
            import time

            time.sleep(0.2)
            http.post(
                f"/sessions/{sid}/ops/set_axis",
                json={"channel": "x", "attribute": "Horsepower"},
            )
            http.post(
                f"/sessions/{sid}/ops/set_axis",
                json={"channel": "y", "attribute": "MPG"},
            )
            http.post(
                f"/sessions/{sid}/ops/set_mark",
                json={"channel": "color", "attribute": "Origin"},
            )
            thread.join(timeout=15)
            assert not thread.is_alive()

    spec_events = [e for e in events if e["event"] == "spec_changed"]
    revisions = [e["data"]["revision"] for e in spec_events]
    assert revisions == [1, 2, 3]


def test_canonical_bytes_from_http(client, sid):
    """Responses come from the canonical encoder, not the framework's."""
    _bind_axes(client, sid)
    raw = client.get(f"/sessions/{sid}/spec").text
    from duovis.canonical import canonical_dumps

    assert raw == canonical_dumps(json.loads(raw))
