"""HTTP surface over the session store (JSON bodies, JSONL trace upload)."""

from __future__ import annotations

import json
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.responses import FileResponse, JSONResponse
from fastapi.staticfiles import StaticFiles

from .kb import KnowledgeBase, serialize_kb
from .metrics import MetricsConfig
from .pipeline import render_report
from .questionnaires import (
    SusResponse,
    TlxResponse,
    sus_adjective,
    sus_score,
    tlx_raw,
    tlx_weighted,
)
from .session import SessionError, SessionStore
from .trace import TraceError


def _session_view(session) -> dict:
    return {
        "id": session.id,
        "state": session.state,
        "created_at": session.created_at,
        "manual_overrides": dict(session.manual_overrides),
        "questionnaires_present": sorted(session.questionnaires),
    }


def create_app(
    data_dir: str | Path,
    kb: KnowledgeBase,
    config: MetricsConfig = MetricsConfig(),
    frontend_dir: str | Path | None = None,
) -> FastAPI:
    store = SessionStore(data_dir, kb, config)
    app = FastAPI(title="smartassess")
    app.state.store = store

    @app.exception_handler(SessionError)
    async def session_error(_request, exc: SessionError):
        return JSONResponse(status_code=exc.status, content={"error": str(exc)})

    @app.exception_handler(TraceError)
    async def trace_error(_request, exc: TraceError):
        return JSONResponse(status_code=422, content={"error": str(exc), "line": exc.line})

    @app.exception_handler(ValueError)
    async def value_error(_request, exc: ValueError):
        return JSONResponse(status_code=422, content={"error": str(exc)})

    @app.post("/sessions", status_code=201)
    def create_session():
        return _session_view(store.create_session())

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        return _session_view(store.get(session_id))

    @app.put("/sessions/{session_id}/trace")
    async def submit_trace(session_id: str, request: Request):
        text = (await request.body()).decode("utf-8")
        return _session_view(store.submit_trace(session_id, text))

    @app.post("/sessions/{session_id}/manual")
    async def submit_manual(session_id: str, request: Request):
        body = await request.json()
        return _session_view(
            store.submit_manual(session_id, body["ability"], bool(body["detected"]))
        )

    @app.post("/sessions/{session_id}/compute")
    def compute(session_id: str):
        return _session_view(store.compute(session_id))

    @app.post("/sessions/{session_id}/questionnaires/sus")
    async def submit_sus(session_id: str, request: Request):
        body = await request.json()
        resp = SusResponse(items=tuple(body["items"]))
        score = sus_score(resp)
        result = {"items": list(resp.items), "score": score, "adjective": sus_adjective(score)}
        store.submit_questionnaire(session_id, "sus", result)
        return result

    @app.post("/sessions/{session_id}/questionnaires/tlx")
    async def submit_tlx(session_id: str, request: Request):
        body = await request.json()
        weights = body.get("weights")
        resp = TlxResponse(
            ratings={k: float(v) for k, v in body["ratings"].items()},
            weights=tuple(tuple(w) for w in weights) if weights else None,
        )
        scored = tlx_weighted(resp) if resp.weights else tlx_raw(resp)
        result = {
            "ratings": resp.ratings,
            "weighted": resp.weights is not None,
            "workload": scored.workload,
            "bands": scored.bands,
        }
        store.submit_questionnaire(session_id, "tlx", result)
        return result

    @app.get("/sessions/{session_id}/report")
    def get_report(session_id: str):
        # canonical serialization keeps recomputed reports byte-identical
        return Response(content=render_report(store.get_report(session_id)),
                        media_type="application/json")

    @app.get("/kb")
    def get_kb():
        return json.loads(serialize_kb(kb))

    if frontend_dir is not None and Path(frontend_dir).is_dir():
        frontend = Path(frontend_dir)

        @app.get("/", include_in_schema=False)
        def index():
            return FileResponse(frontend / "index.html")

        app.mount("/assets", StaticFiles(directory=frontend), name="assets")

    return app
