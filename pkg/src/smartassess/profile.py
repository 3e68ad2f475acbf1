"""Ease-of-Action classification: metrics + manual entries -> ability profile."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import IntEnum

from . import metrics as m
from .kb import ABILITY_IDS, KnowledgeBase, TargetRange
from .metrics import MetricsConfig
from .trace import AssessmentTrace, TaskWindow, slice_window


class EaseOfAction(IntEnum):
    IMPOSSIBLE = 0
    DIFFICULT = 1
    EASY = 2

    @property
    def label(self) -> str:
        return _EASE_LABELS[self.value]

    @classmethod
    def from_label(cls, label: str) -> "EaseOfAction":
        return cls(_EASE_LABELS.index(label))


_EASE_LABELS = ("Impossible", "Difficult", "Easy")


@dataclass(frozen=True)
class MetricValue:
    ability: str
    value: float | bool
    unit: str  # degrees | dB | steps | count | similarity | boolean
    confidence: float = 1.0
    method: str = "sensor"  # sensor | manual


@dataclass(frozen=True)
class ProfileEntry:
    ease: EaseOfAction
    metric: MetricValue | None
    source: str  # sensor | manual | unassessed


@dataclass(frozen=True)
class AbilityProfile:
    entries: dict[str, ProfileEntry]
    warnings: tuple[str, ...] = ()

    def ease(self, ability: str) -> EaseOfAction:
        entry = self.entries.get(ability)
        # unassessed abilities count as Impossible for recommendation purposes
        return entry.ease if entry else EaseOfAction.IMPOSSIBLE


def classify_ranged(
    measured: float, target: TargetRange, difficult_fraction: float = 0.5
) -> EaseOfAction:
    """Easy at/above target, Difficult from difficult_fraction*target, else Impossible."""
    if target.kind != "ranged":
        raise ValueError(f"target for {target.ability} is not ranged")
    if measured < 0:
        raise ValueError(f"negative measurement: {measured}")
    assert target.target_value is not None
    if measured >= target.target_value:
        return EaseOfAction.EASY
    if measured >= difficult_fraction * target.target_value:
        return EaseOfAction.DIFFICULT
    return EaseOfAction.IMPOSSIBLE


def classify_binary(detected: bool, marginal: bool = False) -> EaseOfAction:
    if marginal and not detected:
        raise ValueError("marginal requires detected")
    if not detected:
        return EaseOfAction.IMPOSSIBLE
    return EaseOfAction.DIFFICULT if marginal else EaseOfAction.EASY


_HEAD_ROM_KEY = {
    "head_tilt_up": "max_up",
    "head_tilt_down": "max_down",
    "head_turn_left": "max_left",
    "head_turn_right": "max_right",
}

_MOTION_ABILITIES = frozenset({"shoulder_move", "elbow_move", "wrist_rotate", "ankle_move"})


def _classify_window(
    ability: str,
    trace: AssessmentTrace,
    window: TaskWindow,
    kb: KnowledgeBase,
    config: MetricsConfig,
) -> ProfileEntry:
    target = kb.targets[ability]

    if ability in _HEAD_ROM_KEY:
        imu = slice_window(trace, window, "imu")
        series = m.estimate_orientation(imu, config.alpha)
        measured = m.head_rom(series)[_HEAD_ROM_KEY[ability]]
        ease = classify_ranged(measured, target, config.difficult_fraction)
        return ProfileEntry(ease, MetricValue(ability, measured, "degrees"), "sensor")

    if ability in _MOTION_ABILITIES:
        imu = slice_window(trace, window, "imu")
        measured = m.motion_rom(imu, config)
        ease = classify_ranged(measured, target, config.difficult_fraction)
        return ProfileEntry(ease, MetricValue(ability, measured, "degrees"), "sensor")

    if ability == "walk":
        records = slice_window(trace, window)
        steps = m.count_steps(records, config)
        ease = classify_ranged(float(steps), target, config.difficult_fraction)
        return ProfileEntry(ease, MetricValue(ability, float(steps), "steps"), "sensor")

    if ability in ("blow_in", "blow_out"):
        audio = slice_window(trace, window, "audio")
        direction = "in" if ability == "blow_in" else "out"
        result = m.detect_blow(audio, direction, config)
        marginal = (
            result["detected"]
            and result["peak_db"] < result["threshold_db"] + config.blow_marginal_db
        )
        ease = classify_binary(result["detected"], marginal)
        return ProfileEntry(ease, MetricValue(ability, result["peak_db"], "dB"), "sensor")

    if ability == "blink":
        face = slice_window(trace, window, "face")
        count = m.detect_blink(face, config)
        detected = count >= 1
        marginal = detected and count < config.blink_requested
        ease = classify_binary(detected, marginal)
        return ProfileEntry(ease, MetricValue(ability, float(count), "count"), "sensor")

    if ability == "smile":
        face = slice_window(trace, window, "face")
        result = m.detect_smile(face, config)
        ease = classify_binary(result["detected"])
        return ProfileEntry(ease, MetricValue(ability, result["peak_prob"], "similarity"), "sensor")

    if ability == "speak":
        transcripts = [r for r in slice_window(trace, window, "transcript")]
        if not transcripts:
            raise ValueError("speak window contains no transcript record")
        last = transcripts[-1]
        similarity = m.score_speech(last.expected, last.recognized)
        detected = similarity >= config.speech_marginal_low
        marginal = detected and similarity < config.speech_marginal_high
        ease = classify_binary(detected, marginal)
        return ProfileEntry(ease, MetricValue(ability, similarity, "similarity"), "sensor")

    if ability == "finger_bend":
        touch = slice_window(trace, window, "touch")
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            counts = m.classify_touch(touch, config)
        gestures = counts["tap_count"] + counts["swipe_count"]
        ease = classify_ranged(float(gestures), target, config.difficult_fraction)
        return ProfileEntry(ease, MetricValue(ability, float(gestures), "count"), "sensor")

    raise ValueError(f"no sensor pipeline for ability {ability}; use a manual entry")


def build_profile(
    trace: AssessmentTrace, kb: KnowledgeBase, config: MetricsConfig = MetricsConfig()
) -> AbilityProfile:
    """Run the sensor pipeline per task window, fold in manual entries.

    Manual entries apply only to abilities without a sensor window; detector
    failures leave the ability unassessed with a warning rather than aborting.
    """
    entries: dict[str, ProfileEntry] = {}
    problems: list[str] = []

    for window in trace.windows:
        try:
            entries[window.ability] = _classify_window(window.ability, trace, window, kb, config)
        except Exception as e:
            problems.append(f"{window.ability}: {e}")

    for ability, detected in trace.manual_entries.items():
        if ability in entries:
            continue  # sensor result wins
        ease = classify_binary(detected)
        entries[ability] = ProfileEntry(
            ease, MetricValue(ability, detected, "boolean", method="manual"), "manual"
        )

    for ability in ABILITY_IDS:
        if ability not in entries:
            entries[ability] = ProfileEntry(EaseOfAction.IMPOSSIBLE, None, "unassessed")

    return AbilityProfile(entries=entries, warnings=tuple(problems))


def _json_value(value: float | bool):
    # -inf marks silence in dB metrics; JSON has no representation for it
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def profile_to_dict(profile: AbilityProfile) -> dict:
    return {
        "entries": {
            ability: {
                "ease": entry.ease.label,
                "source": entry.source,
                "metric": (
                    {
                        "value": _json_value(entry.metric.value),
                        "unit": entry.metric.unit,
                        "confidence": entry.metric.confidence,
                        "method": entry.metric.method,
                    }
                    if entry.metric
                    else None
                ),
            }
            for ability, entry in sorted(profile.entries.items())
        },
        "warnings": list(profile.warnings),
    }
