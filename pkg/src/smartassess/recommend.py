"""Rule-based recommendation of interaction mediums and technologies."""

from __future__ import annotations

from dataclasses import dataclass

from .kb import KnowledgeBase
from .profile import AbilityProfile, EaseOfAction


@dataclass(frozen=True)
class MediumRecommendation:
    medium_id: str
    score: float  # fraction of required abilities classed Easy
    gating: tuple[tuple[str, str], ...]  # (ability, ease label) for each requirement


@dataclass(frozen=True)
class TechnologyRecommendation:
    technology_id: str
    via: str  # highest-scoring recommended medium that controls it


@dataclass(frozen=True)
class Recommendation:
    mediums: tuple[MediumRecommendation, ...]
    technologies: tuple[TechnologyRecommendation, ...]


# sorted requirement lists per KnowledgeBase instance (immutable after load)
_REQS_CACHE: dict[int, list[tuple[str, list[str]]]] = {}


def _medium_requirements(kb: KnowledgeBase) -> list[tuple[str, list[str]]]:
    cached = _REQS_CACHE.get(id(kb))
    if cached is None:
        cached = [(m.id, sorted(m.required_abilities)) for m in kb.mediums]
        _REQS_CACHE[id(kb)] = cached
    return cached


def recommend(profile: AbilityProfile, kb: KnowledgeBase) -> Recommendation:
    """A medium is operable iff no required ability is Impossible.

    Score ranks by the Easy fraction; ties break on id so output is stable.
    Technologies are the union over operable mediums, each tagged with its
    best controlling medium.
    """
    for ability in profile.entries:
        if ability not in kb.targets:
            raise ValueError(f"profile references ability missing from kb: {ability}")

    mediums = []
    for medium_id, required in _medium_requirements(kb):
        eases = []
        easy = 0
        operable = True
        for a in required:
            e = profile.ease(a)
            if e == EaseOfAction.IMPOSSIBLE:
                operable = False
                break
            if e == EaseOfAction.EASY:
                easy += 1
            eases.append((a, e.label))
        if not operable:
            continue
        score = easy / len(required) if required else 1.0
        mediums.append(
            MediumRecommendation(medium_id=medium_id, score=score, gating=tuple(eases))
        )
    mediums.sort(key=lambda r: (-r.score, r.medium_id))

    by_id = {r.medium_id: r for r in mediums}
    technologies = []
    for t in kb.technologies:
        controllers = [by_id[mid] for mid in t.controllable_by if mid in by_id]
        if not controllers:
            continue
        best = min(controllers, key=lambda r: (-r.score, r.medium_id))
        technologies.append(TechnologyRecommendation(technology_id=t.id, via=best.medium_id))
    technologies.sort(key=lambda r: (-by_id[r.via].score, r.technology_id))

    return Recommendation(mediums=tuple(mediums), technologies=tuple(technologies))


def explain(recommendation: Recommendation, profile: AbilityProfile, kb: KnowledgeBase) -> dict:
    """Per-medium report: requirement eases, blocking abilities, final status."""
    recommended = {r.medium_id: r for r in recommendation.mediums}
    report = {}
    for m in kb.mediums:
        required = sorted(m.required_abilities)
        eases = {a: profile.ease(a).label for a in required}
        blocking = [a for a in required if profile.ease(a) == EaseOfAction.IMPOSSIBLE]
        entry = {
            "recommended": m.id in recommended,
            "requirements": eases,
            "blocking": blocking,
        }
        if m.id in recommended:
            entry["score"] = recommended[m.id].score
        report[m.id] = entry
    return report


def recommendation_to_dict(recommendation: Recommendation) -> dict:
    return {
        "mediums": [
            {"id": r.medium_id, "score": r.score, "gating": [list(g) for g in r.gating]}
            for r in recommendation.mediums
        ],
        "technologies": [
            {"id": r.technology_id, "via": r.via} for r in recommendation.technologies
        ],
    }
