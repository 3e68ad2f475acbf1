"""Assessment-session lifecycle backed by per-session append-only event logs.

Each session is one JSONL file under the data directory; replaying the file
reconstructs the session exactly, so a crash can lose at most the event
being written.
"""

from __future__ import annotations

import json
import os
import secrets
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path

from .kb import ABILITY_SET, KnowledgeBase
from .metrics import MetricsConfig
from .pipeline import compute_report
from .trace import AssessmentTrace, TraceError, parse_trace

STATES = ("created", "traced", "profiled", "complete")


class SessionError(Exception):
    def __init__(self, message: str, status: int = 400):
        super().__init__(message)
        self.status = status


class UnknownSession(SessionError):
    def __init__(self, session_id: str):
        super().__init__(f"unknown session: {session_id}", status=404)


class WrongState(SessionError):
    def __init__(self, session_id: str, state: str, needed: str):
        super().__init__(f"session {session_id} is in state {state}, needs {needed}", status=409)


@dataclass
class Session:
    id: str
    created_at: float
    state: str = "created"
    trace_text: str | None = None
    trace: AssessmentTrace | None = None
    manual_overrides: dict[str, bool] = field(default_factory=dict)
    profile_report: dict | None = None  # profile/recommendation/explanations bundle
    questionnaires: dict = field(default_factory=dict)
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def snapshot(self) -> dict:
        """Comparable view of all persisted state (used by crash/reload tests)."""
        return {
            "id": self.id,
            "state": self.state,
            "trace_text": self.trace_text,
            "manual_overrides": dict(self.manual_overrides),
            "profile_report": self.profile_report,
            "questionnaires": self.questionnaires,
        }


class SessionStore:
    """Loads, mutates, and persists sessions; one event-log file per session."""

    def __init__(self, data_dir: str | Path, kb: KnowledgeBase, config: MetricsConfig = MetricsConfig()):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self.kb = kb
        self.config = config
        self._sessions: dict[str, Session] = {}
        self._registry_lock = threading.Lock()
        self._load_all()

    # -- persistence ----------------------------------------------------

    def _log_path(self, session_id: str) -> Path:
        return self.data_dir / f"{session_id}.jsonl"

    def _append_event(self, session: Session, kind: str, payload: dict):
        path = self._log_path(session.id)
        seq = getattr(session, "_next_seq", 0)
        event = {"seq": seq, "ts": time.time(), "kind": kind, "payload": payload}
        with open(path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(event) + "\n")
            fh.flush()
            os.fsync(fh.fileno())
        session._next_seq = seq + 1

    def _load_all(self):
        for path in sorted(self.data_dir.glob("*.jsonl")):
            session = self._replay(path)
            if session is not None:
                self._sessions[session.id] = session

    def _replay(self, path: Path) -> Session | None:
        session: Session | None = None
        seq = 0
        for raw in path.read_text(encoding="utf-8").splitlines():
            if not raw.strip():
                continue
            event = json.loads(raw)
            kind, payload = event["kind"], event["payload"]
            if kind == "created":
                session = Session(id=payload["id"], created_at=payload["created_at"])
            elif session is None:
                raise SessionError(f"{path}: event before creation")
            elif kind == "trace":
                self._apply_trace(session, payload["text"])
            elif kind == "manual":
                self._apply_manual(session, payload["ability"], payload["detected"])
            elif kind == "compute":
                self._apply_compute(session)
            elif kind in ("sus", "tlx"):
                self._apply_questionnaire(session, kind, payload)
            else:
                raise SessionError(f"{path}: unknown event kind {kind}")
            seq = event["seq"] + 1
        if session is not None:
            session._next_seq = seq
        return session

    # -- pure state transitions (shared by live calls and replay) -------

    def _apply_trace(self, session: Session, text: str):
        trace = parse_trace(text)
        session.trace_text = text
        session.trace = trace
        session.state = "traced"
        session.profile_report = None

    def _apply_manual(self, session: Session, ability: str, detected: bool):
        session.manual_overrides[ability] = detected
        # manual input invalidates any computed profile
        if session.state in ("profiled", "complete"):
            session.state = "traced"
            session.profile_report = None

    def _effective_trace(self, session: Session) -> AssessmentTrace:
        trace = session.trace or AssessmentTrace()
        if not session.manual_overrides:
            return trace
        merged = dict(trace.manual_entries)
        merged.update(session.manual_overrides)
        return AssessmentTrace(
            records=trace.records, windows=trace.windows, manual_entries=merged
        )

    def _apply_compute(self, session: Session):
        report = compute_report(self._effective_trace(session), self.kb, self.config)
        session.profile_report = report
        session.state = "complete" if session.questionnaires else "profiled"

    def _apply_questionnaire(self, session: Session, kind: str, payload: dict):
        session.questionnaires[kind] = payload
        if session.state == "profiled":
            session.state = "complete"

    # -- public API -----------------------------------------------------

    def create_session(self) -> Session:
        session_id = secrets.token_hex(16)
        session = Session(id=session_id, created_at=time.time())
        with self._registry_lock:
            self._sessions[session_id] = session
        self._append_event(session, "created", {"id": session_id, "created_at": session.created_at})
        return session

    def get(self, session_id: str) -> Session:
        try:
            return self._sessions[session_id]
        except KeyError:
            raise UnknownSession(session_id) from None

    def submit_trace(self, session_id: str, text: str) -> Session:
        session = self.get(session_id)
        with session.lock:
            if session.state not in ("created", "traced"):
                raise WrongState(session_id, session.state, "created or traced")
            if session.trace_text == text:
                return session  # idempotent resubmission
            parse_trace(text)  # reject before logging so bad traces never persist
            self._apply_trace(session, text)
            self._append_event(session, "trace", {"text": text})
        return session

    def submit_manual(self, session_id: str, ability: str, detected: bool) -> Session:
        session = self.get(session_id)
        if ability not in ABILITY_SET:
            raise SessionError(f"unknown ability: {ability}")
        with session.lock:
            if session.state == "complete":
                raise WrongState(session_id, session.state, "created..profiled")
            self._apply_manual(session, ability, detected)
            self._append_event(session, "manual", {"ability": ability, "detected": detected})
        return session

    def compute(self, session_id: str) -> Session:
        session = self.get(session_id)
        with session.lock:
            if session.state == "created":
                raise WrongState(session_id, session.state, "traced or later")
            self._apply_compute(session)
            self._append_event(session, "compute", {})
        return session

    def submit_questionnaire(self, session_id: str, kind: str, result: dict) -> Session:
        session = self.get(session_id)
        with session.lock:
            self._apply_questionnaire(session, kind, result)
            self._append_event(session, kind, result)
        return session

    def get_report(self, session_id: str) -> dict:
        session = self.get(session_id)
        with session.lock:
            if session.profile_report is None:
                raise WrongState(session_id, session.state, "profiled or complete")
            report = dict(session.profile_report)
            if session.questionnaires:
                report["questionnaires"] = dict(session.questionnaires)
            return report
