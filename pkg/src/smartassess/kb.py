"""Declarative knowledge base: ability targets, interaction mediums, technologies.

The knowledge base is the static rule content the recommender runs against.
It is immutable after construction and safe to share between threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

ABILITY_IDS: tuple[str, ...] = (
    "head_tilt_up",
    "head_tilt_down",
    "head_turn_left",
    "head_turn_right",
    "gaze_up",
    "gaze_down",
    "gaze_left",
    "gaze_right",
    "blink",
    "see",
    "suck",
    "blow_in",
    "blow_out",
    "bite_tongue",
    "tongue_left",
    "tongue_right",
    "smile",
    "speak",
    "shoulder_move",
    "elbow_move",
    "wrist_rotate",
    "finger_bend",
    "ankle_move",
    "walk",
)

ABILITY_SET = frozenset(ABILITY_IDS)


class KbError(Exception):
    """Raised when a knowledge-base document cannot be loaded."""


@dataclass(frozen=True)
class TargetRange:
    ability: str
    kind: str  # "ranged" | "binary"
    target_value: float | None = None
    provenance: str = ""

    def __post_init__(self):
        if self.kind not in ("ranged", "binary"):
            raise KbError(f"target {self.ability}: unknown kind {self.kind!r}")
        if self.kind == "ranged":
            if self.target_value is None or self.target_value <= 0:
                raise KbError(f"target {self.ability}: ranged target must be strictly positive")
        elif self.target_value is not None:
            raise KbError(f"target {self.ability}: binary target carries no numeric value")


@dataclass(frozen=True)
class InteractionMedium:
    id: str
    display_name: str
    required_abilities: frozenset[str]


@dataclass(frozen=True)
class Technology:
    id: str
    display_name: str
    controllable_by: frozenset[str]


@dataclass(frozen=True)
class KnowledgeBase:
    version: str
    targets: dict[str, TargetRange] = field(default_factory=dict)
    mediums: tuple[InteractionMedium, ...] = ()
    technologies: tuple[Technology, ...] = ()

    def medium(self, medium_id: str) -> InteractionMedium:
        for m in self.mediums:
            if m.id == medium_id:
                return m
        raise KeyError(medium_id)


def validate_kb(kb: KnowledgeBase) -> list[str]:
    """Check all structural invariants; returns one message per violation."""
    problems: list[str] = []
    for ability, target in kb.targets.items():
        if ability not in ABILITY_SET:
            problems.append(f"targets[{ability}]: unknown ability")
        if target.ability != ability:
            problems.append(f"targets[{ability}]: key/ability mismatch ({target.ability})")
    for ability in ABILITY_IDS:
        if ability not in kb.targets:
            problems.append(f"targets: missing target for {ability}")

    medium_ids = set()
    for m in kb.mediums:
        if m.id in medium_ids:
            problems.append(f"mediums[{m.id}]: duplicate id")
        medium_ids.add(m.id)
        for ability in sorted(m.required_abilities):
            if ability not in ABILITY_SET:
                problems.append(f"mediums[{m.id}]: unknown required ability {ability}")

    tech_ids = set()
    for t in kb.technologies:
        if t.id in tech_ids:
            problems.append(f"technologies[{t.id}]: duplicate id")
        tech_ids.add(t.id)
        for mid in sorted(t.controllable_by):
            if mid not in medium_ids:
                problems.append(f"technologies[{t.id}]: unknown medium {mid}")
    return problems


def serialize_kb(kb: KnowledgeBase) -> str:
    doc = {
        "version": kb.version,
        "targets": [
            {
                "ability": t.ability,
                "kind": t.kind,
                **({"target_value": t.target_value} if t.kind == "ranged" else {}),
                "provenance": t.provenance,
            }
            for t in (kb.targets[a] for a in ABILITY_IDS if a in kb.targets)
        ],
        "mediums": [
            {
                "id": m.id,
                "display_name": m.display_name,
                "required_abilities": sorted(m.required_abilities),
            }
            for m in kb.mediums
        ],
        "technologies": [
            {
                "id": t.id,
                "display_name": t.display_name,
                "controllable_by": sorted(t.controllable_by),
            }
            for t in kb.technologies
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def load_kb(document: str) -> KnowledgeBase:
    """Parse and validate a KB JSON document; raises KbError on any problem."""
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as e:
        raise KbError(f"malformed JSON: {e}") from e
    if not isinstance(doc, dict):
        raise KbError("document root must be an object")

    for key in ("version", "targets", "mediums", "technologies"):
        if key not in doc:
            raise KbError(f"missing field: {key}")

    targets: dict[str, TargetRange] = {}
    for i, entry in enumerate(doc["targets"]):
        try:
            ability = entry["ability"]
            kind = entry["kind"]
        except (KeyError, TypeError) as e:
            raise KbError(f"targets[{i}]: missing field {e}") from e
        if ability not in ABILITY_SET:
            raise KbError(f"targets[{i}]: unknown ability {ability!r}")
        if ability in targets:
            raise KbError(f"targets[{i}]: duplicate target for {ability}")
        targets[ability] = TargetRange(
            ability=ability,
            kind=kind,
            target_value=entry.get("target_value"),
            provenance=entry.get("provenance", ""),
        )

    mediums = []
    for i, entry in enumerate(doc["mediums"]):
        try:
            mediums.append(
                InteractionMedium(
                    id=entry["id"],
                    display_name=entry.get("display_name", entry["id"]),
                    required_abilities=frozenset(entry["required_abilities"]),
                )
            )
        except (KeyError, TypeError) as e:
            raise KbError(f"mediums[{i}]: missing field {e}") from e

    technologies = []
    for i, entry in enumerate(doc["technologies"]):
        try:
            technologies.append(
                Technology(
                    id=entry["id"],
                    display_name=entry.get("display_name", entry["id"]),
                    controllable_by=frozenset(entry["controllable_by"]),
                )
            )
        except (KeyError, TypeError) as e:
            raise KbError(f"technologies[{i}]: missing field {e}") from e

    kb = KnowledgeBase(
        version=str(doc["version"]),
        targets=targets,
        mediums=tuple(mediums),
        technologies=tuple(technologies),
    )
    problems = validate_kb(kb)
    if problems:
        raise KbError("invalid knowledge base: " + "; ".join(problems))
    return kb


_HEAD_ROM = frozenset({"head_tilt_up", "head_tilt_down", "head_turn_left", "head_turn_right"})
_GAZE = frozenset({"gaze_up", "gaze_down", "gaze_left", "gaze_right"})


def builtin_kb() -> KnowledgeBase:
    """The bundled knowledge base encoding the published ability/medium/technology model."""

    def ranged(ability, value, provenance):
        return TargetRange(ability, "ranged", value, provenance)

    def binary(ability, provenance="framework Y/N target"):
        return TargetRange(ability, "binary", None, provenance)

    targets = {
        "head_tilt_up": ranged("head_tilt_up", 20.0, "framework head ROM target"),
        "head_tilt_down": ranged("head_tilt_down", 20.0, "framework head ROM target"),
        "head_turn_left": ranged("head_turn_left", 80.0, "framework head ROM target"),
        "head_turn_right": ranged("head_turn_right", 80.0, "framework head ROM target"),
        "gaze_up": binary("gaze_up"),
        "gaze_down": binary("gaze_down"),
        "gaze_left": binary("gaze_left"),
        "gaze_right": binary("gaze_right"),
        "blink": binary("blink"),
        "see": binary("see"),
        "suck": binary("suck"),
        "blow_in": binary("blow_in", "blow threshold 50 dB"),
        "blow_out": binary("blow_out", "blow threshold 45 dB"),
        "bite_tongue": binary("bite_tongue"),
        "tongue_left": binary("tongue_left"),
        "tongue_right": binary("tongue_right"),
        "smile": binary("smile"),
        "speak": binary("speak"),
        "shoulder_move": ranged("shoulder_move", 118.0, "shoulder ROM for daily living (Khadilkar)"),
        "elbow_move": ranged("elbow_move", 90.0, "implementer default"),
        "wrist_rotate": ranged("wrist_rotate", 90.0, "implementer default"),
        "ankle_move": ranged("ankle_move", 20.0, "implementer default"),
        "finger_bend": ranged("finger_bend", 5.0, "implementer default: gestures per task"),
        "walk": ranged("walk", 20.0, "implementer default: steps per 40 s window"),
    }

    def medium(mid, name, abilities):
        return InteractionMedium(id=mid, display_name=name, required_abilities=frozenset(abilities))

    mediums = (
        medium("brain", "Brain (BCI)", {"see"}),
        medium("chin", "Chin", _HEAD_ROM),
        medium("eye", "Eye gaze", _GAZE | {"see"}),
        medium("foot", "Foot", {"ankle_move"}),
        medium("head", "Head", _HEAD_ROM),
        medium("sip_n_puff", "Sip 'n Puff", {"suck", "blow_in", "blow_out"}),
        medium("tongue", "Tongue", {"tongue_left", "tongue_right"}),
        medium("touch", "Touch", {"finger_bend"}),
        medium("voice", "Voice", {"speak"}),
    )

    def tech(tid, name, mediums_):
        return Technology(id=tid, display_name=name, controllable_by=frozenset(mediums_))

    technologies = (
        tech("smartphone", "Smartphone", {"touch", "voice", "head", "eye", "sip_n_puff", "tongue"}),
        tech("tablet", "Tablet", {"touch", "voice", "head", "eye", "sip_n_puff", "tongue"}),
        tech("head_mounted_display", "Head mounted display", {"head", "eye", "voice", "brain"}),
        tech("eye_tracker", "Eye tracker", {"eye"}),
        tech("head_tracker", "Head tracker", {"head", "chin"}),
        tech("eeg", "Electroencephalogram", {"brain"}),
        tech("switch", "Switch", {"foot", "chin", "head", "sip_n_puff", "tongue", "touch"}),
    )

    return KnowledgeBase(
        version="builtin-1",
        targets=targets,
        mediums=mediums,
        technologies=technologies,
    )
