"""Per-ability signal metrics: orientation fusion, ROM, audio level, detectors.

All functions are pure over lists of TraceRecord; thresholds live in
MetricsConfig so they can be overridden from a config file or the CLI.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, fields, replace

from .trace import TraceRecord

SILENCE_DB = float("-inf")


@dataclass(frozen=True)
class MetricsConfig:
    alpha: float = 0.98  # complementary-filter gyro weight
    cal_offset_db: float = 94.0  # dB at full-scale rms
    blow_in_threshold_db: float = 50.0
    blow_out_threshold_db: float = 45.0
    blow_sustain_ms: float = 300.0
    blow_marginal_db: float = 3.0  # within this margin above threshold -> Difficult
    smile_threshold: float = 0.7
    smile_sustain_ms: float = 500.0
    blink_close_threshold: float = 0.3
    blink_open_threshold: float = 0.7
    blink_recover_ms: float = 700.0
    blink_requested: int = 2
    step_peak_threshold: float = 11.8  # m/s^2
    step_refractory_ms: float = 300.0
    step_window_ms: float = 40_000.0
    tap_max_ms: float = 300.0
    tap_max_displacement: float = 0.05
    swipe_min_displacement: float = 0.15
    speech_marginal_low: float = 0.5
    speech_marginal_high: float = 0.8
    significant_rom_deg: float = 30.0
    difficult_fraction: float = 0.5  # ranged classification: Difficult band lower edge

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def config_from_mapping(overrides: dict) -> MetricsConfig:
    known = {f.name for f in fields(MetricsConfig)}
    unknown = set(overrides) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    return replace(MetricsConfig(), **overrides)


@dataclass(frozen=True)
class OrientationEstimate:
    t_ms: int
    pitch: float  # degrees, positive = tilt up
    roll: float
    yaw: float  # unwrapped, positive = turn left


def _accel_tilt(r: TraceRecord) -> tuple[float, float]:
    # device flat at rest: accel = (0, 0, g); pitch about x from ay/az, roll from ax
    pitch = math.degrees(math.atan2(r.ay, math.hypot(r.ax, r.az)))
    roll = math.degrees(math.atan2(-r.ax, r.az))
    return pitch, roll


def estimate_orientation(
    imu: list[TraceRecord], alpha: float = 0.98
) -> list[OrientationEstimate]:
    """Complementary filter: gyro integration blended with accelerometer tilt.

    First sample is initialized from the accelerometer alone; yaw is pure
    gyro integration (no absolute reference).
    """
    if not imu:
        raise ValueError("orientation estimation needs at least one imu record")
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha out of [0,1]: {alpha}")

    pitch, roll = _accel_tilt(imu[0])
    yaw = 0.0
    out = [OrientationEstimate(imu[0].t_ms, pitch, roll, yaw)]
    for prev, cur in zip(imu, imu[1:]):
        dt = (cur.t_ms - prev.t_ms) / 1000.0
        acc_pitch, acc_roll = _accel_tilt(cur)
        pitch = alpha * (pitch + math.degrees(cur.gx) * dt) + (1 - alpha) * acc_pitch
        roll = alpha * (roll + math.degrees(cur.gy) * dt) + (1 - alpha) * acc_roll
        yaw += math.degrees(cur.gz) * dt
        out.append(OrientationEstimate(cur.t_ms, pitch, roll, yaw))
    return out


def head_rom(series: list[OrientationEstimate]) -> dict[str, float]:
    """Max angular excursions from the initial pose; left = positive yaw."""
    if not series:
        raise ValueError("empty orientation series")
    p0, y0 = series[0].pitch, series[0].yaw
    return {
        "max_up": max(0.0, max(s.pitch for s in series) - p0),
        "max_down": max(0.0, p0 - min(s.pitch for s in series)),
        "max_left": max(0.0, max(s.yaw for s in series) - y0),
        "max_right": max(0.0, y0 - min(s.yaw for s in series)),
    }


def audio_level_db(rms: float, cal_offset_db: float = 94.0) -> float:
    """Map a full-scale rms amplitude to a calibrated dB level."""
    if not 0.0 <= rms <= 1.0:
        raise ValueError(f"rms out of [0,1]: {rms}")
    if rms == 0.0:
        return SILENCE_DB
    return 20.0 * math.log10(rms) + cal_offset_db


def _sustained_runs(times: list[int], active: list[bool], min_ms: float) -> bool:
    """True iff some contiguous run of active frames spans at least min_ms."""
    run_start = None
    for t, a in zip(times, active):
        if a:
            if run_start is None:
                run_start = t
            if t - run_start >= min_ms:
                return True
        else:
            run_start = None
    return False


def detect_blow(
    audio: list[TraceRecord], direction: str, config: MetricsConfig = MetricsConfig()
) -> dict:
    """Blow detection against the direction-specific dB threshold."""
    if direction == "in":
        threshold = config.blow_in_threshold_db
    elif direction == "out":
        threshold = config.blow_out_threshold_db
    else:
        raise ValueError(f"direction must be 'in' or 'out', got {direction!r}")

    levels = [audio_level_db(r.rms, config.cal_offset_db) for r in audio]
    peak = max(levels, default=SILENCE_DB)
    detected = _sustained_runs(
        [r.t_ms for r in audio], [lv >= threshold for lv in levels], config.blow_sustain_ms
    )
    return {"detected": detected, "peak_db": peak, "threshold_db": threshold}


def count_steps(records: list[TraceRecord], config: MetricsConfig = MetricsConfig()) -> int:
    """Step count over the first 40 s of the window.

    Prefers explicit step events; falls back to accelerometer peak detection
    with a refractory period.
    """
    if not records:
        return 0
    t0 = min(r.t_ms for r in records)
    cutoff = t0 + config.step_window_ms
    in_window = [r for r in records if r.t_ms < cutoff]

    steps = [r for r in in_window if r.kind == "step"]
    if steps:
        return len(steps)

    count = 0
    last_counted = -math.inf
    prev_mag = 0.0
    for r in in_window:
        if r.kind != "imu":
            continue
        mag = math.sqrt(r.ax**2 + r.ay**2 + r.az**2)
        rising = mag > config.step_peak_threshold and prev_mag <= config.step_peak_threshold
        if rising and r.t_ms - last_counted >= config.step_refractory_ms:
            count += 1
            last_counted = r.t_ms
        prev_mag = mag
    return count


def detect_blink(face: list[TraceRecord], config: MetricsConfig = MetricsConfig()) -> int:
    """Count close-then-reopen episodes of the weaker eye."""
    count = 0
    closed_at = None
    for r in face:
        openness = min(r.eye_open_left, r.eye_open_right)
        if closed_at is None:
            if openness < config.blink_close_threshold:
                closed_at = r.t_ms
        else:
            if openness > config.blink_open_threshold:
                if r.t_ms - closed_at <= config.blink_recover_ms:
                    count += 1
                closed_at = None
    return count


def detect_smile(face: list[TraceRecord], config: MetricsConfig = MetricsConfig()) -> dict:
    peak = max((r.smile_prob for r in face), default=0.0)
    detected = _sustained_runs(
        [r.t_ms for r in face],
        [r.smile_prob >= config.smile_threshold for r in face],
        config.smile_sustain_ms,
    )
    return {"detected": detected, "peak_prob": peak}


def _normalize_text(text: str) -> str:
    cleaned = "".join(c if c.isalnum() or c.isspace() else " " for c in text.lower())
    return " ".join(cleaned.split())


def _edit_distance(a: str, b: str) -> int:
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def score_speech(expected: str, recognized: str) -> float:
    """Normalized edit-distance similarity in [0,1]."""
    norm_e = _normalize_text(expected)
    norm_r = _normalize_text(recognized)
    if not norm_e:
        raise ValueError("expected phrase must be non-empty")
    longest = max(len(norm_e), len(norm_r))
    return 1.0 - _edit_distance(norm_e, norm_r) / longest


def motion_rom(imu: list[TraceRecord], config: MetricsConfig = MetricsConfig()) -> float:
    """Cumulative rotation (degrees) about the dominant gyro axis."""
    if not imu:
        raise ValueError("empty imu window")
    integrated = [0.0, 0.0, 0.0]
    for prev, cur in zip(imu, imu[1:]):
        dt = (cur.t_ms - prev.t_ms) / 1000.0
        for i, g in enumerate((cur.gx, cur.gy, cur.gz)):
            integrated[i] += abs(g) * dt
    return math.degrees(max(integrated))


def classify_touch(
    touch: list[TraceRecord], config: MetricsConfig = MetricsConfig()
) -> dict[str, int]:
    """Pair down/up gestures into taps and swipes; unmatched events are dropped."""
    taps = 0
    swipes = 0
    down: TraceRecord | None = None
    for r in touch:
        if r.phase == "down":
            if down is not None:
                warnings.warn(f"touch down at {down.t_ms} ms without matching up; ignored")
            down = r
        elif r.phase == "up":
            if down is None:
                warnings.warn(f"touch up at {r.t_ms} ms without matching down; ignored")
                continue
            displacement = math.hypot(r.x - down.x, r.y - down.y)
            duration = r.t_ms - down.t_ms
            if displacement >= config.swipe_min_displacement:
                swipes += 1
            elif duration < config.tap_max_ms and displacement < config.tap_max_displacement:
                taps += 1
            down = None
    if down is not None:
        warnings.warn(f"touch down at {down.t_ms} ms without matching up; ignored")
    return {"tap_count": taps, "swipe_count": swipes}
