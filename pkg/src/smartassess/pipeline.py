"""End-to-end assessment: trace -> profile -> recommendation -> report document."""

from __future__ import annotations

import json

from .kb import KnowledgeBase
from .metrics import MetricsConfig
from .profile import build_profile, profile_to_dict
from .recommend import explain, recommend, recommendation_to_dict
from .trace import AssessmentTrace


def compute_report(
    trace: AssessmentTrace,
    kb: KnowledgeBase,
    config: MetricsConfig = MetricsConfig(),
    questionnaires: dict | None = None,
) -> dict:
    """Deterministic consolidated report for one assessment session."""
    profile = build_profile(trace, kb, config)
    recommendation = recommend(profile, kb)
    report = {
        "kb_version": kb.version,
        "config": config.as_dict(),
        "profile": profile_to_dict(profile),
        "recommendation": recommendation_to_dict(recommendation),
        "explanations": explain(recommendation, profile, kb),
    }
    if questionnaires:
        report["questionnaires"] = questionnaires
    return report


def render_report(report: dict) -> str:
    """Canonical byte-stable serialization of a report document."""
    return json.dumps(report, sort_keys=True, indent=2) + "\n"
