"""Shared domain records: user profiles and gender predictions."""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime

FEMALE = "female"
MALE = "male"
BRAND = "brand"
UNKNOWN = "unknown"

METHOD_SSA = "SSA"
METHOD_NGRAM = "NGRAM"
METHOD_LING = "LING"
METHOD_ENSEMBLE = "ENSEMBLE"


@dataclass(frozen=True)
class GenderPrediction:
    """Outcome of one method for one user.  When covered is False the label
    and probability are absent and must be ignored by consumers."""

    method: str
    covered: bool
    label: str | None = None
    p_female: float | None = None

    @classmethod
    def of_probability(cls, method: str, p_female: float) -> "GenderPrediction":
        # tie at exactly 0.5 goes to female
        label = FEMALE if p_female >= 0.5 else MALE
        return cls(method, True, label, float(p_female))

    @classmethod
    def uncovered(cls, method: str) -> "GenderPrediction":
        return cls(method, False)


@dataclass
class UserRecord:
    """One social-media profile, possibly with ground-truth labels."""

    user_id: str
    display_name: str = ""
    screen_name: str = ""
    description: str = ""
    followers_count: int = 0
    friends_count: int = 0
    statuses_count: int = 0
    created_at: datetime | None = None
    url: str | None = None
    county_fips: str | None = None
    label_gender: str | None = None
    label_confidence: float | None = None
    extra: dict = field(default_factory=dict)
