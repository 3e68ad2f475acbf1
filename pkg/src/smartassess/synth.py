"""Synthetic trace generation for tests and shipped fixtures.

Builds JSONL trace lines from ground-truth motion/audio descriptions, without
going through any of the detectors it is used to check.
"""

from __future__ import annotations

import json
import math


class TraceBuilder:
    def __init__(self):
        self.lines: list[str] = []

    def emit(self, t_ms: int, kind: str, **payload):
        record = {"t_ms": int(t_ms), "kind": kind, **payload}
        self.lines.append(json.dumps(record))

    def task(self, ability: str, start_ms: int, end_ms: int):
        self.emit(start_ms, "task", ability=ability, phase="start")
        return _TaskScope(self, ability, end_ms)

    def manual(self, t_ms: int, ability: str, detected: bool):
        self.emit(t_ms, "manual", ability=ability, detected=detected)

    def imu(self, t_ms: int, accel=(0.0, 0.0, 9.81), gyro=(0.0, 0.0, 0.0)):
        ax, ay, az = accel
        gx, gy, gz = gyro
        self.emit(t_ms, "imu", ax=ax, ay=ay, az=az, gx=gx, gy=gy, gz=gz)

    def audio_db(self, t_ms: int, level_db: float, cal_offset_db: float = 94.0):
        rms = 10 ** ((level_db - cal_offset_db) / 20.0)
        self.emit(t_ms, "audio", rms=round(rms, 9))

    def face(self, t_ms: int, smile_prob=0.0, eye_open=0.9):
        self.emit(
            t_ms,
            "face",
            smile_prob=smile_prob,
            eye_open_left=eye_open,
            eye_open_right=eye_open,
        )

    def pitch_excursion(
        self, start_ms: int, peak_deg: float, rise_ms: int = 1000, hz: int = 100
    ) -> int:
        """Pitch ramp 0 -> peak -> 0 with consistent accel + gyro; returns end time."""
        dt_ms = 1000 // hz
        total = 2 * rise_ms
        prev_pitch = 0.0
        for k in range(total // dt_ms + 1):
            t = start_ms + k * dt_ms
            frac = k * dt_ms / rise_ms
            pitch = peak_deg * (frac if frac <= 1.0 else 2.0 - frac)
            rate = math.radians(pitch - prev_pitch) / (dt_ms / 1000.0) if k else 0.0
            rad = math.radians(pitch)
            self.imu(t, accel=(0.0, 9.81 * math.sin(rad), 9.81 * math.cos(rad)),
                     gyro=(rate, 0.0, 0.0))
            prev_pitch = pitch
        return start_ms + total

    def yaw_excursion(
        self, start_ms: int, peak_deg: float, rise_ms: int = 1000, hz: int = 100
    ) -> int:
        """Yaw ramp 0 -> peak -> 0 (gyro only; positive = left); returns end time."""
        dt_ms = 1000 // hz
        total = 2 * rise_ms
        prev_yaw = 0.0
        for k in range(total // dt_ms + 1):
            t = start_ms + k * dt_ms
            frac = k * dt_ms / rise_ms
            yaw = peak_deg * (frac if frac <= 1.0 else 2.0 - frac)
            rate = math.radians(yaw - prev_yaw) / (dt_ms / 1000.0) if k else 0.0
            self.imu(t, gyro=(0.0, 0.0, rate))
            prev_yaw = yaw
        return start_ms + total

    def axis_rotation(
        self, start_ms: int, total_deg: float, duration_ms: int = 1000,
        axis: int = 0, hz: int = 100,
    ) -> int:
        """Constant-rate rotation about one gyro axis; returns end time."""
        dt_ms = 1000 // hz
        rate = math.radians(total_deg) / (duration_ms / 1000.0)
        gyro = [0.0, 0.0, 0.0]
        for k in range(duration_ms // dt_ms + 1):
            gyro[axis] = rate if k else 0.0  # right-Riemann: rate applies over (t-1, t]
            self.imu(start_ms + k * dt_ms, gyro=tuple(gyro))
        return start_ms + duration_ms

    def steps(self, start_ms: int, count: int, spacing_ms: int = 1000):
        for k in range(count):
            self.emit(start_ms + k * spacing_ms, "step")

    def accel_step_peaks(self, start_ms: int, count: int, spacing_ms: int = 1000,
                         peak: float = 15.0):
        """IMU spikes that the fallback step detector should count."""
        for k in range(count):
            t = start_ms + k * spacing_ms
            if t >= 20:
                self.imu(t - 20)
            self.imu(t, accel=(0.0, 0.0, peak))
            self.imu(t + 20)

    def audio_burst(self, start_ms: int, duration_ms: int, level_db: float,
                    frame_ms: int = 50):
        for t in range(start_ms, start_ms + duration_ms + 1, frame_ms):
            self.audio_db(t, level_db)

    def blink(self, t_ms: int, reopen_ms: int = 300):
        self.face(t_ms, eye_open=0.9)
        self.face(t_ms + 100, eye_open=0.1)
        self.face(t_ms + 100 + reopen_ms, eye_open=0.9)

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


class _TaskScope:
    def __init__(self, builder: TraceBuilder, ability: str, end_ms: int):
        self.builder = builder
        self.ability = ability
        self.end_ms = end_ms

    def __enter__(self):
        return self.builder

    def __exit__(self, *exc):
        self.builder.emit(self.end_ms, "task", ability=self.ability, phase="end")
        return False


def worked_example_trace() -> str:
    """Full-session fixture: every ability except finger_bend and speak comes out
    Easy, reproducing the published recommendation example."""
    b = TraceBuilder()

    with b.task("walk", 0, 40_000):
        b.steps(1_000, 30, spacing_ms=1_000)

    with b.task("blink", 41_000, 44_000):
        b.blink(41_500)
        b.blink(42_800)

    with b.task("smile", 45_000, 47_000):
        for t in range(45_200, 46_400, 100):
            b.face(t, smile_prob=0.85)

    with b.task("speak", 48_000, 50_000):
        b.emit(49_000, "transcript",
               expected="the quick brown fox jumps over the lazy dog", recognized="")

    with b.task("head_tilt_up", 51_000, 54_000):
        b.pitch_excursion(51_200, 30.0)

    with b.task("head_tilt_down", 55_000, 58_000):
        b.pitch_excursion(55_200, -30.0)

    with b.task("head_turn_left", 59_000, 63_000):
        b.yaw_excursion(59_200, 85.0)

    with b.task("head_turn_right", 64_000, 68_000):
        b.yaw_excursion(64_200, -85.0)

    with b.task("shoulder_move", 69_000, 73_000):
        b.axis_rotation(69_200, 130.0, axis=0)

    with b.task("elbow_move", 74_000, 77_000):
        b.axis_rotation(74_200, 100.0, axis=0)

    with b.task("wrist_rotate", 78_000, 81_000):
        b.axis_rotation(78_200, 100.0, axis=1)

    with b.task("ankle_move", 82_000, 84_000):
        b.axis_rotation(82_200, 30.0, axis=0)

    with b.task("blow_in", 85_000, 87_000):
        b.audio_burst(85_200, 600, 56.0)

    with b.task("blow_out", 88_000, 90_000):
        b.audio_burst(88_200, 600, 50.0)

    for ability in ("gaze_up", "gaze_down", "gaze_left", "gaze_right", "see",
                    "suck", "bite_tongue", "tongue_left", "tongue_right"):
        b.manual(91_000, ability, True)
    b.manual(91_000, "finger_bend", False)

    return b.text()
