import math

import pytest
from hypothesis import given, strategies as st

from smartassess import metrics as m
from smartassess.synth import TraceBuilder
from smartassess.trace import TraceRecord, parse_trace


def imu(t_ms, accel=(0.0, 0.0, 9.81), gyro=(0.0, 0.0, 0.0)):
    ax, ay, az = accel
    gx, gy, gz = gyro
    return TraceRecord(t_ms=t_ms, kind="imu", ax=ax, ay=ay, az=az, gx=gx, gy=gy, gz=gz)


def audio(t_ms, rms):
    return TraceRecord(t_ms=t_ms, kind="audio", rms=rms)


def face(t_ms, smile=0.0, eye=0.9):
    return TraceRecord(
        t_ms=t_ms, kind="face", smile_prob=smile, eye_open_left=eye, eye_open_right=eye
    )


def touch(t_ms, x, y, phase):
    return TraceRecord(t_ms=t_ms, kind="touch", x=x, y=y, phase=phase)


def records_of(builder: TraceBuilder, kind: str):
    return [r for r in parse_trace(builder.text()).records if r.kind == kind]


# -- orientation -----------------------------------------------------------


def test_orientation_rest_is_level():
    series = m.estimate_orientation([imu(t * 10) for t in range(100)])
    assert all(abs(s.pitch) < 1e-9 and abs(s.roll) < 1e-9 for s in series)


def test_orientation_static_tilt_converges_to_30_deg():
    g = 9.81
    tilted = (0.0, g * math.sin(math.radians(30)), g * math.cos(math.radians(30)))
    # start from a level first sample so the filter has to converge
    records = [imu(0)] + [imu(t * 10, accel=tilted) for t in range(1, 201)]
    series = m.estimate_orientation(records)
    assert abs(series[-1].pitch - 30.0) < 1.0


def test_orientation_first_sample_from_accel_alone():
    g = 9.81
    tilted = (0.0, g * math.sin(math.radians(30)), g * math.cos(math.radians(30)))
    series = m.estimate_orientation([imu(0, accel=tilted)])
    assert abs(series[0].pitch - 30.0) < 1e-9


def test_yaw_pure_gyro_integration():
    rate = math.pi / 2
    records = [imu(t * 10, gyro=(0.0, 0.0, rate)) for t in range(101)]
    series = m.estimate_orientation(records, alpha=1.0)
    assert abs(series[-1].yaw - 90.0) < 1.0


def test_alpha_zero_reproduces_accel_tilt_exactly():
    g = 9.81
    records = [
        imu(t * 10, accel=(0.0, g * math.sin(math.radians(a)), g * math.cos(math.radians(a))))
        for t, a in enumerate([0, 10, 20, 15, 5])
    ]
    series = m.estimate_orientation(records, alpha=0.0)
    for s, expect in zip(series, [0, 10, 20, 15, 5]):
        assert abs(s.pitch - expect) < 1e-9


def test_orientation_empty_rejected():
    with pytest.raises(ValueError):
        m.estimate_orientation([])


# -- head ROM --------------------------------------------------------------


def test_head_rom_constant_orientation_is_zero():
    series = m.estimate_orientation([imu(t * 10) for t in range(50)])
    assert m.head_rom(series) == {"max_up": 0.0, "max_down": 0.0, "max_left": 0.0, "max_right": 0.0}


def test_head_rom_pitch_excursion():
    b = TraceBuilder()
    b.pitch_excursion(0, 25.0)
    series = m.estimate_orientation(records_of(b, "imu"))
    rom = m.head_rom(series)
    assert abs(rom["max_up"] - 25.0) < 1.0
    assert rom["max_down"] < 1.0


def test_head_rom_yaw_excursions():
    b = TraceBuilder()
    end = b.yaw_excursion(0, -30.0)
    b.yaw_excursion(end + 10, 85.0)
    series = m.estimate_orientation(records_of(b, "imu"))
    rom = m.head_rom(series)
    assert abs(rom["max_left"] - 85.0) < 1.0
    assert abs(rom["max_right"] - 30.0) < 1.0


def test_head_rom_monotone_in_window_extension():
    b = TraceBuilder()
    b.pitch_excursion(0, 25.0)
    records = records_of(b, "imu")
    prev = None
    for n in range(1, len(records) + 1, 13):
        rom = m.head_rom(m.estimate_orientation(records[:n]))
        assert all(v >= 0 for v in rom.values())
        if prev is not None:
            assert all(rom[k] >= prev[k] - 1e-9 for k in rom)
        prev = rom


# -- audio -----------------------------------------------------------------


def test_audio_level_reference_points():
    assert m.audio_level_db(1.0) == pytest.approx(94.0)
    assert m.audio_level_db(0.1) == pytest.approx(74.0)
    assert m.audio_level_db(6.3096e-3) == pytest.approx(50.0, abs=0.01)


def test_audio_level_silence():
    assert m.audio_level_db(0.0) == m.SILENCE_DB


def test_audio_level_rejects_out_of_range():
    with pytest.raises(ValueError):
        m.audio_level_db(1.5)
    with pytest.raises(ValueError):
        m.audio_level_db(-0.1)


@given(st.floats(min_value=1e-9, max_value=0.1))
def test_audio_times_ten_adds_twenty_db(rms):
    assert m.audio_level_db(10 * rms) - m.audio_level_db(rms) == pytest.approx(20.0, abs=1e-6)


def test_blow_in_detected_at_52_db():
    frames = [audio(t, 10 ** ((52 - 94) / 20)) for t in range(0, 401, 50)]
    assert m.detect_blow(frames, "in")["detected"]


def test_blow_thresholds_respect_direction():
    frames = [audio(t, 10 ** ((47 - 94) / 20)) for t in range(0, 401, 50)]
    assert m.detect_blow(frames, "out")["detected"]
    assert not m.detect_blow(frames, "in")["detected"]


def test_blow_silence():
    result = m.detect_blow([], "in")
    assert not result["detected"] and result["peak_db"] == m.SILENCE_DB


def test_blow_short_burst_not_sustained():
    frames = [audio(t, 10 ** ((60 - 94) / 20)) for t in range(0, 201, 50)]
    assert not m.detect_blow(frames, "in")["detected"]


def test_blow_unknown_direction():
    with pytest.raises(ValueError):
        m.detect_blow([], "sideways")


# -- steps -----------------------------------------------------------------


def step(t_ms):
    return TraceRecord(t_ms=t_ms, kind="step")


def test_count_steps_thirty_events():
    assert m.count_steps([step(1000 * k) for k in range(30)]) == 30


def test_count_steps_empty():
    assert m.count_steps([]) == 0


def test_count_steps_truncates_past_40_s():
    records = [step(1000 * k) for k in range(50)]
    assert m.count_steps(records) == 40  # events at >= 40 s from the first are dropped


def test_count_steps_accel_refractory():
    b = TraceBuilder()
    b.accel_step_peaks(0, 2, spacing_ms=200)
    assert m.count_steps(records_of(b, "imu")) == 1


def test_count_steps_accel_fallback():
    b = TraceBuilder()
    b.accel_step_peaks(0, 12, spacing_ms=1000)
    assert m.count_steps(records_of(b, "imu")) == 12


def test_count_steps_time_translation_invariant():
    b = TraceBuilder()
    b.accel_step_peaks(100, 8, spacing_ms=700)
    records = records_of(b, "imu")
    shifted = [imu(r.t_ms + 12_345, (r.ax, r.ay, r.az), (r.gx, r.gy, r.gz)) for r in records]
    assert m.count_steps(records) == m.count_steps(shifted)


# -- face ------------------------------------------------------------------


def test_blink_single_episode():
    frames = [face(0, eye=0.9), face(200, eye=0.1), face(400, eye=0.9)]
    assert m.detect_blink(frames) == 1


def test_blink_constant_open():
    assert m.detect_blink([face(t * 100, eye=0.9) for t in range(10)]) == 0


def test_blink_requires_recovery():
    frames = [face(0, eye=0.9), face(200, eye=0.1), face(400, eye=0.1)]
    assert m.detect_blink(frames) == 0


def test_blink_slow_recovery_not_counted():
    frames = [face(0, eye=0.9), face(100, eye=0.1), face(1000, eye=0.9)]
    assert m.detect_blink(frames) == 0


def test_smile_sustained():
    frames = [face(t, smile=0.8) for t in range(0, 601, 100)]
    result = m.detect_smile(frames)
    assert result["detected"] and result["peak_prob"] == 0.8


def test_smile_low_probability():
    assert not m.detect_smile([face(t, smile=0.1) for t in range(0, 601, 100)])["detected"]


def test_smile_single_spike():
    assert not m.detect_smile([face(0, smile=0.9)])["detected"]


# -- speech ----------------------------------------------------------------


def test_speech_identical():
    assert m.score_speech("Hello world", "hello, world!") == 1.0


def test_speech_empty_recognized():
    assert m.score_speech("hello", "") == 0.0


def test_speech_one_substitution():
    got = m.score_speech("the quick brown fox", "the quick brown box")
    assert got == pytest.approx(1 - 1 / 19)


def test_speech_empty_expected_rejected():
    with pytest.raises(ValueError):
        m.score_speech("  ", "hi")


@given(st.text(min_size=1, max_size=30), st.text(max_size=30))
def test_speech_bounds_and_symmetry(a, b):
    norm = m._normalize_text(a)
    if not norm:
        return
    s = m.score_speech(a, b)
    assert 0.0 <= s <= 1.0
    if m._normalize_text(b):
        assert s == pytest.approx(m.score_speech(b, a))
    assert (s == 1.0) == (norm == m._normalize_text(b))


# -- limb ROM --------------------------------------------------------------


def test_motion_rom_zero_gyro():
    assert m.motion_rom([imu(t * 10) for t in range(10)]) == 0.0


def test_motion_rom_constant_rate():
    records = [imu(t * 10, gyro=(2.0, 0.0, 0.0)) for t in range(121)]
    assert m.motion_rom(records) == pytest.approx(math.degrees(2.4), abs=0.5)


def test_motion_rom_dominant_axis_only():
    b = TraceBuilder()
    b.axis_rotation(0, 90.0, axis=0)
    end = b.axis_rotation(1200, 40.0, axis=2)
    records = records_of(b, "imu")
    assert m.motion_rom(records) == pytest.approx(90.0, abs=1.0)


def test_motion_rom_empty_rejected():
    with pytest.raises(ValueError):
        m.motion_rom([])


# -- touch -----------------------------------------------------------------


def test_touch_tap():
    records = [touch(0, 0.5, 0.5, "down"), touch(100, 0.5, 0.5, "up")]
    assert m.classify_touch(records) == {"tap_count": 1, "swipe_count": 0}


def test_touch_swipe():
    records = [touch(0, 0.2, 0.5, "down"), touch(400, 0.8, 0.5, "up")]
    assert m.classify_touch(records) == {"tap_count": 0, "swipe_count": 1}


def test_touch_empty():
    assert m.classify_touch([]) == {"tap_count": 0, "swipe_count": 0}


def test_touch_unmatched_warns_and_ignores():
    records = [touch(0, 0.5, 0.5, "up"), touch(10, 0.5, 0.5, "down")]
    with pytest.warns(UserWarning):
        counts = m.classify_touch(records)
    assert counts == {"tap_count": 0, "swipe_count": 0}


def test_touch_slow_small_movement_is_neither():
    records = [touch(0, 0.5, 0.5, "down"), touch(1000, 0.51, 0.5, "up")]
    assert m.classify_touch(records) == {"tap_count": 0, "swipe_count": 0}
