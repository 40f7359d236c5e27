"""Non-person (brand/organization) account filter.

A random forest over eight profile features decides person vs. brand before
any gender inference.  Feature extraction needs an explicit snapshot
timestamp so tweets-per-month is reproducible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from datetime import datetime
from urllib.parse import urlparse

from .errors import TrainingError
from .ml import Dataset, ForestConfig, ForestModel, predict_score, train_random_forest
from .ml.data import FeatureVector
from .normalize import DEFAULT_STOP_TOKENS, extract_first_name
from .records import BRAND, FEMALE, MALE, UserRecord
from .ssa import NameStats

PERSON_FEATURE_NAMES = [
    "friends_count", "followers_count", "has_first_person_pronoun",
    "emoji_count", "description_length", "has_external_url",
    "name_in_ssa", "tweets_per_month",
]

DEFAULT_EMOJI_RANGES = ((0x1F300, 0x1FAFF), (0x2600, 0x27BF), (0x1F1E6, 0x1F1FF))
DEFAULT_SOCIAL_DOMAINS = frozenset({
    "twitter", "facebook", "instagram", "youtube",
    "tumblr", "pinterest", "snapchat", "linkedin",
})

_PRONOUN = re.compile(r"\b(i|we)\b", flags=re.IGNORECASE)


@dataclass(frozen=True)
class AccountFeatureConfig:
    emoji_ranges: tuple = DEFAULT_EMOJI_RANGES
    social_domains: frozenset = DEFAULT_SOCIAL_DOMAINS
    stop_tokens: frozenset = DEFAULT_STOP_TOKENS


@dataclass(frozen=True)
class AccountFeatures:
    friends_count: int
    followers_count: int
    has_first_person_pronoun: int
    emoji_count: int
    description_length: int
    has_external_url: int
    name_in_ssa: int
    tweets_per_month: float

    def to_vector(self) -> FeatureVector:
        return FeatureVector.from_dense([
            self.friends_count, self.followers_count,
            self.has_first_person_pronoun, self.emoji_count,
            self.description_length, self.has_external_url,
            self.name_in_ssa, self.tweets_per_month,
        ])


def _whole_months(created: datetime, snapshot: datetime) -> int:
    months = (snapshot.year - created.year) * 12 + (snapshot.month - created.month)
    if snapshot.day < created.day:
        months -= 1
    return months


def _utf16_length(text: str) -> int:
    # platform length semantics: astral-plane characters count twice
    return sum(2 if ord(ch) > 0xFFFF else 1 for ch in text)


def _social_url(url: str, social_domains) -> bool:
    host = urlparse(url).netloc.lower().split(":")[0]
    if not host:
        host = urlparse("//" + url).netloc.lower().split(":")[0]
    labels = [p for p in host.split(".") if p]
    if not labels:
        return False
    registrable = labels[-2] if len(labels) >= 2 else labels[0]
    return registrable in social_domains


def extract_account_features(user: UserRecord, snapshot: datetime,
                             stats: NameStats,
                             cfg: AccountFeatureConfig = AccountFeatureConfig()) -> AccountFeatures:
    """All eight profile features at the given snapshot time."""
    if user.created_at is not None and snapshot < user.created_at:
        raise ValueError(
            f"snapshot {snapshot} precedes account creation {user.created_at}")
    desc = user.description or ""
    months = 1
    if user.created_at is not None:
        months = max(1, _whole_months(user.created_at, snapshot))
    first = extract_first_name(user.display_name, cfg.stop_tokens)
    in_ssa = 1 if first is not None and first.token in stats else 0
    has_url = 0
    if user.url:
        has_url = 0 if _social_url(user.url, cfg.social_domains) else 1
    emoji = sum(1 for ch in desc
                if any(lo <= ord(ch) <= hi for lo, hi in cfg.emoji_ranges))
    return AccountFeatures(
        friends_count=user.friends_count,
        followers_count=user.followers_count,
        has_first_person_pronoun=1 if _PRONOUN.search(desc) else 0,
        emoji_count=emoji,
        description_length=_utf16_length(desc),
        has_external_url=has_url,
        name_in_ssa=in_ssa,
        tweets_per_month=user.statuses_count / months,
    )


def person_label01(user: UserRecord) -> int | None:
    """1 = person (female/male label), 0 = brand, None = excluded."""
    if user.label_gender in (FEMALE, MALE):
        return 1
    if user.label_gender == BRAND:
        return 0
    return None


def train_person_filter(users, snapshot: datetime, stats: NameStats,
                        forest_cfg: ForestConfig | None = None,
                        feature_cfg: AccountFeatureConfig = AccountFeatureConfig()) -> ForestModel:
    """Random forest over account features; positive class = person."""
    vectors, labels = [], []
    for user in users:
        label = person_label01(user)
        if label is None:
            continue
        vectors.append(extract_account_features(user, snapshot, stats, feature_cfg).to_vector())
        labels.append(label)
    if not vectors:
        raise TrainingError("no labeled person/brand rows")
    if len(set(labels)) < 2:
        raise TrainingError("person filter needs both person and brand rows")
    data = Dataset.from_dense(
        [v.to_dense() for v in vectors], labels, PERSON_FEATURE_NAMES)
    return train_random_forest(data, forest_cfg)


def filter_persons(model: ForestModel, users, snapshot: datetime,
                   stats: NameStats, threshold: float = 0.5,
                   feature_cfg: AccountFeatureConfig = AccountFeatureConfig()):
    """Partition users into (persons, removed, removed_count) at the given
    probability threshold; both partitions are returned for audit."""
    persons, removed = [], []
    for user in users:
        vec = extract_account_features(user, snapshot, stats, feature_cfg).to_vector()
        if predict_score(model, vec) >= threshold:
            persons.append(user)
        else:
            removed.append(user)
    return persons, removed, len(removed)
