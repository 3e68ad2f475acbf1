"""Usability instruments: SUS with adjective bands, NASA TLX raw and weighted."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

TLX_DIMENSIONS = ("Mental", "Physical", "Temporal", "Performance", "Effort", "Frustration")

# (score anchor, adjective); interior anchors come from the adjective rating
# scale instrument, the 12.5 / 90.9 endpoints bound the scale
DEFAULT_ADJECTIVE_ANCHORS: tuple[tuple[float, str], ...] = (
    (12.5, "Worst Imaginable"),
    (20.3, "Awful"),
    (35.7, "Poor"),
    (50.9, "OK"),
    (71.4, "Good"),
    (85.5, "Excellent"),
    (90.9, "Best Imaginable"),
)


@dataclass(frozen=True)
class SusResponse:
    items: tuple[int, ...]  # 10 Likert items, 1..5, 1 = Strongly Disagree

    def __post_init__(self):
        if len(self.items) != 10:
            raise ValueError(f"SUS needs exactly 10 items, got {len(self.items)}")
        for i, item in enumerate(self.items, start=1):
            if not isinstance(item, int) or not 1 <= item <= 5:
                raise ValueError(f"SUS item {i} out of range [1,5]: {item}")


@dataclass(frozen=True)
class TlxResponse:
    ratings: dict[str, float]  # keyed by TLX_DIMENSIONS, each in [0,100]
    weights: tuple[tuple[str, str, str], ...] | None = None  # (dim_a, dim_b, winner)

    def __post_init__(self):
        missing = set(TLX_DIMENSIONS) - set(self.ratings)
        if missing:
            raise ValueError(f"missing TLX ratings: {sorted(missing)}")
        extra = set(self.ratings) - set(TLX_DIMENSIONS)
        if extra:
            raise ValueError(f"unknown TLX dimensions: {sorted(extra)}")
        for dim, value in self.ratings.items():
            if not 0 <= value <= 100:
                raise ValueError(f"TLX rating {dim} out of [0,100]: {value}")
        if self.weights is not None:
            expected = {frozenset(p) for p in combinations(TLX_DIMENSIONS, 2)}
            seen = set()
            for a, b, winner in self.weights:
                pair = frozenset((a, b))
                if pair not in expected:
                    raise ValueError(f"invalid TLX pair: {a}/{b}")
                if pair in seen:
                    raise ValueError(f"duplicate TLX pair: {a}/{b}")
                if winner not in (a, b):
                    raise ValueError(f"winner {winner} not in pair {a}/{b}")
                seen.add(pair)
            if seen != expected:
                missing_pairs = sorted("/".join(sorted(p)) for p in expected - seen)
                raise ValueError(f"missing TLX pairs: {missing_pairs}")


def sus_score(resp: SusResponse) -> float:
    """Standard SUS scoring: odd items credit agreement, even items disagreement."""
    total = 0
    for i, item in enumerate(resp.items, start=1):
        total += (item - 1) if i % 2 == 1 else (5 - item)
    return 2.5 * total


def sus_adjective(
    score: float, anchors: tuple[tuple[float, str], ...] = DEFAULT_ADJECTIVE_ANCHORS
) -> str:
    """Nearest-anchor adjective; ties resolve to the higher adjective."""
    if not 0 <= score <= 100:
        raise ValueError(f"SUS score out of [0,100]: {score}")
    best = None
    best_dist = None
    for anchor, adjective in anchors:
        dist = abs(score - anchor)
        if best_dist is None or dist <= best_dist:  # later (higher) anchor wins ties
            best, best_dist = adjective, dist
    return best


def tlx_band(rating: float) -> str:
    if rating < 100 / 3:
        return "Low"
    if rating < 200 / 3:
        return "Medium"
    return "High"


@dataclass(frozen=True)
class TlxResult:
    workload: float
    bands: dict[str, str] = field(default_factory=dict)


def tlx_raw(resp: TlxResponse) -> TlxResult:
    """Unweighted workload: arithmetic mean of the six ratings."""
    workload = sum(resp.ratings[d] for d in TLX_DIMENSIONS) / len(TLX_DIMENSIONS)
    bands = {d: tlx_band(resp.ratings[d]) for d in TLX_DIMENSIONS}
    return TlxResult(workload=workload, bands=bands)


def tlx_weighted(resp: TlxResponse) -> TlxResult:
    """Weighted workload: each dimension weighted by pairwise-comparison wins (sum 15)."""
    if resp.weights is None:
        raise ValueError("weighted TLX needs the 15 pairwise comparisons")
    wins = {d: 0 for d in TLX_DIMENSIONS}
    for _, _, winner in resp.weights:
        wins[winner] += 1
    workload = sum(resp.ratings[d] * wins[d] for d in TLX_DIMENSIONS) / 15
    bands = {d: tlx_band(resp.ratings[d]) for d in TLX_DIMENSIONS}
    return TlxResult(workload=workload, bands=bands)
