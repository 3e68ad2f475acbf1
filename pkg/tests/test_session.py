import json

import pytest
from fastapi.testclient import TestClient

from smartassess.kb import builtin_kb
from smartassess.service import create_app
from smartassess.session import SessionStore, UnknownSession, WrongState
from smartassess.synth import worked_example_trace

KB = builtin_kb()

SIMPLE_TRACE = "\n".join([
    json.dumps({"t_ms": 0, "kind": "task", "ability": "walk", "phase": "start"}),
    json.dumps({"t_ms": 1000, "kind": "step"}),
    json.dumps({"t_ms": 40000, "kind": "task", "ability": "walk", "phase": "end"}),
]) + "\n"


@pytest.fixture
def store(tmp_path):
    return SessionStore(tmp_path / "data", KB)


def reload_store(store):
    return SessionStore(store.data_dir, store.kb, store.config)


def test_create_session(store):
    s = store.create_session()
    assert s.id and s.state == "created"


def test_distinct_ids(store):
    assert store.create_session().id != store.create_session().id


def test_session_survives_restart(store):
    s = store.create_session()
    reloaded = reload_store(store)
    assert reloaded.get(s.id).snapshot() == s.snapshot()


def test_unknown_session(store):
    with pytest.raises(UnknownSession):
        store.get("nope")


def test_submit_trace_moves_to_traced(store):
    s = store.create_session()
    store.submit_trace(s.id, SIMPLE_TRACE)
    assert s.state == "traced"


def test_bad_trace_rejected_atomically(tmp_path):
    store = SessionStore(tmp_path, KB)
    s = store.create_session()
    bad = SIMPLE_TRACE + "not json\n"
    from smartassess.trace import TraceError

    with pytest.raises(TraceError, match="line 4"):
        store.submit_trace(s.id, bad)
    assert s.state == "created" and s.trace_text is None
    assert reload_store(store).get(s.id).snapshot() == s.snapshot()


def test_trace_resubmission_idempotent(store):
    s = store.create_session()
    store.submit_trace(s.id, SIMPLE_TRACE)
    before = s.snapshot()
    store.submit_trace(s.id, SIMPLE_TRACE)
    assert s.snapshot() == before
    assert reload_store(store).get(s.id).snapshot() == before


def test_manual_entry_and_overwrite(store):
    s = store.create_session()
    store.submit_manual(s.id, "suck", True)
    store.submit_manual(s.id, "suck", False)
    assert s.manual_overrides == {"suck": False}


def test_manual_unknown_ability(store):
    s = store.create_session()
    from smartassess.session import SessionError

    with pytest.raises(SessionError, match="jump"):
        store.submit_manual(s.id, "jump", True)


def test_compute_requires_trace(store):
    s = store.create_session()
    with pytest.raises(WrongState):
        store.compute(s.id)


def test_compute_deterministic(store):
    s = store.create_session()
    store.submit_trace(s.id, worked_example_trace())
    store.compute(s.id)
    first = store.get_report(s.id)
    store.compute(s.id)
    assert store.get_report(s.id) == first


def test_manual_after_compute_invalidates_profile(store):
    s = store.create_session()
    store.submit_trace(s.id, SIMPLE_TRACE)
    store.compute(s.id)
    assert s.state == "profiled"
    store.submit_manual(s.id, "see", True)
    assert s.state == "traced" and s.profile_report is None
    with pytest.raises(WrongState):
        store.get_report(s.id)


def test_report_needs_profiled_state(store):
    s = store.create_session()
    with pytest.raises(WrongState):
        store.get_report(s.id)


def test_crash_reload_equivalence_across_full_flow(store):
    s = store.create_session()
    store.submit_trace(s.id, worked_example_trace())
    store.submit_manual(s.id, "see", True)
    store.compute(s.id)
    store.submit_questionnaire(s.id, "sus", {"score": 72.5, "adjective": "Good"})
    reloaded = reload_store(store)
    assert reloaded.get(s.id).snapshot() == s.snapshot()
    assert reloaded.get_report(s.id) == store.get_report(s.id)


def test_questionnaire_completes_profiled_session(store):
    s = store.create_session()
    store.submit_trace(s.id, SIMPLE_TRACE)
    store.compute(s.id)
    store.submit_questionnaire(s.id, "sus", {"score": 50.0, "adjective": "OK"})
    assert s.state == "complete"
    assert "questionnaires" in store.get_report(s.id)


# -- HTTP surface ----------------------------------------------------------


@pytest.fixture
def client(tmp_path):
    app = create_app(tmp_path / "data", KB)
    return TestClient(app)


def test_http_full_flow(client):
    sid = client.post("/sessions").json()["id"]
    r = client.put(f"/sessions/{sid}/trace", content=worked_example_trace())
    assert r.status_code == 200 and r.json()["state"] == "traced"
    r = client.post(f"/sessions/{sid}/manual", json={"ability": "see", "detected": True})
    assert r.status_code == 200
    r = client.post(f"/sessions/{sid}/compute")
    assert r.json()["state"] == "profiled"
    report = client.get(f"/sessions/{sid}/report").json()
    assert {m["id"] for m in report["recommendation"]["mediums"]} == {
        "brain", "chin", "eye", "foot", "head", "sip_n_puff", "tongue"
    }


def test_http_trace_error_cites_line(client):
    sid = client.post("/sessions").json()["id"]
    r = client.put(f"/sessions/{sid}/trace", content='{"t_ms":0,"kind":"step"}\nbroken\n')
    assert r.status_code == 422
    assert r.json()["line"] == 2


def test_http_unknown_session_404(client):
    assert client.get("/sessions/doesnotexist").status_code == 404


def test_http_wrong_state_409(client):
    sid = client.post("/sessions").json()["id"]
    assert client.post(f"/sessions/{sid}/compute").status_code == 409
    assert client.get(f"/sessions/{sid}/report").status_code == 409


def test_http_sus_endpoint(client):
    sid = client.post("/sessions").json()["id"]
    r = client.post(f"/sessions/{sid}/questionnaires/sus", json={"items": [3] * 10})
    assert r.json() == {"items": [3] * 10, "score": 50.0, "adjective": "OK"}


def test_http_tlx_endpoint(client):
    sid = client.post("/sessions").json()["id"]
    ratings = {"Mental": 20, "Physical": 40, "Temporal": 60,
               "Performance": 0, "Effort": 30, "Frustration": 10}
    r = client.post(f"/sessions/{sid}/questionnaires/tlx", json={"ratings": ratings})
    body = r.json()
    assert abs(body["workload"] - 26.6667) < 0.01
    assert body["bands"]["Temporal"] == "Medium"


def test_http_kb_endpoint(client):
    body = client.get("/kb").json()
    assert body["version"] == "builtin-1"
    assert any(m["id"] == "sip_n_puff" for m in body["mediums"])


def test_http_report_byte_identical_across_recompute(client):
    sid = client.post("/sessions").json()["id"]
    client.put(f"/sessions/{sid}/trace", content=worked_example_trace())
    client.post(f"/sessions/{sid}/compute")
    a = client.get(f"/sessions/{sid}/report").content
    client.post(f"/sessions/{sid}/compute")
    b = client.get(f"/sessions/{sid}/report").content
    assert a == b
