"""Sensor trace parsing: JSON Lines records, task windowing, manual entries."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .kb import ABILITY_SET

RECORD_KINDS = frozenset(
    {"imu", "audio", "step", "face", "touch", "transcript", "task", "manual"}
)


class TraceError(Exception):
    """Raised when a trace stream fails validation; carries the 1-based line."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class TraceRecord:
    t_ms: int
    kind: str
    # per-kind payload, flat; unused fields stay None
    ax: float | None = None
    ay: float | None = None
    az: float | None = None
    gx: float | None = None
    gy: float | None = None
    gz: float | None = None
    rms: float | None = None
    smile_prob: float | None = None
    eye_open_left: float | None = None
    eye_open_right: float | None = None
    yaw: float | None = None
    pitch: float | None = None
    x: float | None = None
    y: float | None = None
    phase: str | None = None
    expected: str | None = None
    recognized: str | None = None
    ability: str | None = None
    detected: bool | None = None


@dataclass(frozen=True)
class TaskWindow:
    ability: str
    start_ms: int
    end_ms: int


@dataclass(frozen=True)
class AssessmentTrace:
    records: tuple[TraceRecord, ...] = ()
    windows: tuple[TaskWindow, ...] = ()
    manual_entries: dict[str, bool] = field(default_factory=dict)

    def window_for(self, ability: str) -> TaskWindow | None:
        for w in self.windows:
            if w.ability == ability:
                return w
        return None


def _require(obj: dict, key: str, line: int):
    if key not in obj:
        raise TraceError(f"{obj.get('kind', '?')} record missing field {key!r}", line)
    return obj[key]


def _prob(value, name: str, line: int) -> float:
    v = float(value)
    if not 0.0 <= v <= 1.0:
        raise TraceError(f"{name} out of [0,1]: {v}", line)
    return v


def _parse_record(obj: dict, line: int) -> TraceRecord:
    t_ms = _require(obj, "t_ms", line)
    if not isinstance(t_ms, (int, float)) or t_ms < 0:
        raise TraceError(f"t_ms must be a non-negative number, got {t_ms!r}", line)
    kind = _require(obj, "kind", line)
    if kind not in RECORD_KINDS:
        raise TraceError(f"unknown record kind {kind!r}", line)
    t_ms = int(t_ms)

    if kind == "imu":
        return TraceRecord(
            t_ms=t_ms,
            kind=kind,
            ax=float(_require(obj, "ax", line)),
            ay=float(_require(obj, "ay", line)),
            az=float(_require(obj, "az", line)),
            gx=float(_require(obj, "gx", line)),
            gy=float(_require(obj, "gy", line)),
            gz=float(_require(obj, "gz", line)),
        )
    if kind == "audio":
        return TraceRecord(t_ms=t_ms, kind=kind, rms=_prob(_require(obj, "rms", line), "rms", line))
    if kind == "step":
        return TraceRecord(t_ms=t_ms, kind=kind)
    if kind == "face":
        return TraceRecord(
            t_ms=t_ms,
            kind=kind,
            smile_prob=_prob(_require(obj, "smile_prob", line), "smile_prob", line),
            eye_open_left=_prob(_require(obj, "eye_open_left", line), "eye_open_left", line),
            eye_open_right=_prob(_require(obj, "eye_open_right", line), "eye_open_right", line),
            yaw=float(obj.get("yaw", 0.0)),
            pitch=float(obj.get("pitch", 0.0)),
        )
    if kind == "touch":
        phase = _require(obj, "phase", line)
        if phase not in ("down", "move", "up"):
            raise TraceError(f"unknown touch phase {phase!r}", line)
        return TraceRecord(
            t_ms=t_ms,
            kind=kind,
            x=_prob(_require(obj, "x", line), "x", line),
            y=_prob(_require(obj, "y", line), "y", line),
            phase=phase,
        )
    if kind == "transcript":
        return TraceRecord(
            t_ms=t_ms,
            kind=kind,
            expected=str(_require(obj, "expected", line)),
            recognized=str(_require(obj, "recognized", line)),
        )
    # task / manual both carry an ability token from the closed set
    ability = _require(obj, "ability", line)
    if ability not in ABILITY_SET:
        raise TraceError(f"unknown ability {ability!r}", line)
    if kind == "task":
        phase = _require(obj, "phase", line)
        if phase not in ("start", "end"):
            raise TraceError(f"task phase must be start or end, got {phase!r}", line)
        return TraceRecord(t_ms=t_ms, kind=kind, ability=ability, phase=phase)
    detected = _require(obj, "detected", line)
    if not isinstance(detected, bool):
        raise TraceError(f"manual detected must be a boolean, got {detected!r}", line)
    return TraceRecord(t_ms=t_ms, kind=kind, ability=ability, detected=detected)


def parse_trace(stream: str) -> AssessmentTrace:
    """Parse a JSONL trace. Rejects malformed input without producing a partial trace."""
    records: list[TraceRecord] = []
    open_tasks: dict[str, tuple[int, int]] = {}  # ability -> (start_ms, line)
    windows: list[TaskWindow] = []
    manual: dict[str, bool] = {}
    last_t = -1

    for line_no, raw in enumerate(stream.splitlines(), start=1):
        if not raw.strip():
            continue
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as e:
            raise TraceError(f"malformed JSON ({e.msg})", line_no) from e
        if not isinstance(obj, dict):
            raise TraceError("record must be a JSON object", line_no)
        rec = _parse_record(obj, line_no)
        if rec.t_ms < last_t:
            raise TraceError(f"non-monotonic timestamp {rec.t_ms} after {last_t}", line_no)
        last_t = rec.t_ms
        records.append(rec)

        if rec.kind == "task":
            if rec.phase == "start":
                if rec.ability in open_tasks:
                    raise TraceError(f"task {rec.ability} started twice without end", line_no)
                open_tasks[rec.ability] = (rec.t_ms, line_no)
            else:
                if rec.ability not in open_tasks:
                    raise TraceError(f"task end for {rec.ability} without start", line_no)
                start_ms, _ = open_tasks.pop(rec.ability)
                if rec.t_ms <= start_ms:
                    raise TraceError(f"task {rec.ability} window is empty or inverted", line_no)
                windows.append(TaskWindow(rec.ability, start_ms, rec.t_ms))
        elif rec.kind == "manual":
            manual[rec.ability] = rec.detected  # last write wins

    if open_tasks:
        ability, (_, line_no) = next(iter(open_tasks.items()))
        raise TraceError(f"task {ability} never ended", line_no)

    # windows for the same ability must not overlap
    by_ability: dict[str, list[TaskWindow]] = {}
    for w in windows:
        by_ability.setdefault(w.ability, []).append(w)
    for ability, ws in by_ability.items():
        ws.sort(key=lambda w: w.start_ms)
        for a, b in zip(ws, ws[1:]):
            if b.start_ms < a.end_ms:
                raise TraceError(f"overlapping windows for {ability}")

    return AssessmentTrace(records=tuple(records), windows=tuple(windows), manual_entries=manual)


def slice_window(
    trace: AssessmentTrace, window: TaskWindow, kind: str | None = None
) -> list[TraceRecord]:
    """Records with start_ms <= t_ms < end_ms, optionally filtered by kind."""
    if window not in trace.windows:
        raise KeyError(f"window not in trace: {window}")
    return [
        r
        for r in trace.records
        if window.start_ms <= r.t_ms < window.end_ms and (kind is None or r.kind == kind)
    ]
