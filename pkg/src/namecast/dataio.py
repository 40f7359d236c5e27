"""Ingestion of labeled corpora and tweet records, plus county aggregation.

Labeled corpus: delimited text with a header row and configurable column
mapping.  Tweet/user records: newline-delimited JSON objects with fields
user_id, name (required), county_fips (required for aggregation), and
optional screen_name, description, followers_count, friends_count,
statuses_count, created_at, url, tweet_id.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from datetime import datetime

from .config import OPTIONAL_COLUMNS, REQUIRED_COLUMNS, PipelineConfig
from .ensemble import StackedModel
from .errors import LoadError
from .ml import ForestModel
from .person import AccountFeatureConfig, filter_persons
from .records import BRAND, FEMALE, MALE, UNKNOWN, UserRecord

GENDER_VALUES = {"female": FEMALE, "f": FEMALE, "male": MALE, "m": MALE,
                 "brand": BRAND, "unknown": UNKNOWN}

COUNTY_CSV_HEADER = "county_fips,n_tweets,n_users,n_person_users,n_female,n_male,pct_female"


@dataclass
class LoadReport:
    n_rows: int = 0
    retained: int = 0
    dropped_confidence: int = 0
    dropped_gender: int = 0
    skipped_parse: int = 0


def load_labeled_corpus(path, config: PipelineConfig, purpose: str = "gender"):
    """Parse the labeled corpus; returns (records, LoadReport).

    purpose "gender": keep confidence >= threshold and gender in
    {female, male}.  purpose "person": additionally keep brand rows (for the
    person filter).  purpose "all": keep every parseable row.
    """
    if purpose not in ("gender", "person", "all"):
        raise ValueError(f"unknown purpose {purpose!r}")
    report = LoadReport()
    records = []
    with open(path, encoding="utf-8", errors="replace", newline="") as fh:
        reader = csv.DictReader(fh, delimiter=config.delimiter)
        if reader.fieldnames is None:
            raise LoadError(f"{path}: empty file (no header row)")
        header = set(reader.fieldnames)
        for logical, col in config.columns.items():
            if col not in header:
                raise LoadError(f"{path}: mapped column {col!r} (for {logical}) not found")
        cols = {}
        for logical, default in {**REQUIRED_COLUMNS, **OPTIONAL_COLUMNS}.items():
            col = config.columns.get(logical, default)
            cols[logical] = col if col in header else None
        if cols["name"] is None:
            raise LoadError(f"{path}: required name column "
                            f"{config.column('name')!r} not found")

        for i, row in enumerate(reader):
            report.n_rows += 1
            try:
                record = _corpus_record(row, cols, config, i)
            except (ValueError, TypeError):
                report.skipped_parse += 1
                continue
            if purpose == "all":
                report.retained += 1
                records.append(record)
                continue
            conf = record.label_confidence if record.label_confidence is not None else 0.0
            if conf < config.confidence_threshold:
                report.dropped_confidence += 1
                continue
            allowed = (FEMALE, MALE, BRAND) if purpose == "person" else (FEMALE, MALE)
            if record.label_gender not in allowed:
                report.dropped_gender += 1
                continue
            report.retained += 1
            records.append(record)
    return records, report


def _corpus_record(row, cols, config, index) -> UserRecord:
    def get(logical, default=""):
        col = cols[logical]
        value = row.get(col) if col else None
        return default if value is None else value

    gender_raw = get("gender").strip().lower()
    gender = GENDER_VALUES.get(gender_raw, UNKNOWN) if gender_raw else None
    conf_raw = get("confidence").strip()
    confidence = float(conf_raw) if conf_raw else None
    created = _parse_datetime(get("created_at").strip(), config.date_formats)
    fips = get("county_fips").strip() or None
    if fips is not None and not (len(fips) == 5 and fips.isdigit()):
        raise ValueError(f"bad county fips {fips!r}")
    return UserRecord(
        user_id=get("user_id") or f"row{index}",
        display_name=get("name"),
        screen_name=get("screen_name"),
        description=get("description"),
        followers_count=_count(get("followers_count")),
        friends_count=_count(get("friends_count")),
        statuses_count=_count(get("statuses_count")),
        created_at=created,
        url=get("url").strip() or None,
        county_fips=fips,
        label_gender=gender,
        label_confidence=confidence,
    )


def _count(text) -> int:
    text = str(text).strip()
    if not text:
        return 0
    value = int(float(text))
    if value < 0:
        raise ValueError("negative count")
    return value


def _parse_datetime(text, formats):
    if not text:
        return None
    for fmt in formats:
        try:
            return datetime.strptime(text, fmt)
        except ValueError:
            continue
    raise ValueError(f"unparseable timestamp {text!r}")


@dataclass
class TweetRecord:
    user: UserRecord
    tweet_id: str
    raw: str = field(repr=False, default="")

    @property
    def user_id(self):
        return self.user.user_id

    @property
    def county_fips(self):
        return self.user.county_fips


def load_user_records(path, require_county: bool = False):
    """Newline-delimited JSON records; returns (records, skipped_count).
    Records missing user_id/name are skipped; with require_county=True a
    missing county_fips also skips the record."""
    records = []
    skipped = 0
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
                record = _tweet_record(obj, line)
            except (json.JSONDecodeError, ValueError, TypeError, KeyError):
                skipped += 1
                continue
            if require_county and record.county_fips is None:
                skipped += 1
                continue
            records.append(record)
    return records, skipped


def load_tweets(path):
    """Tweet records for aggregation: county_fips is required per record;
    records without it are skipped and counted."""
    return load_user_records(path, require_county=True)


def _tweet_record(obj, raw) -> TweetRecord:
    fips = obj.get("county_fips")
    if fips is not None:
        fips = str(fips)
        if not (len(fips) == 5 and fips.isdigit()):
            raise ValueError(f"bad county fips {fips!r}")
    created = None
    if obj.get("created_at"):
        created = datetime.fromisoformat(str(obj["created_at"]))
    user = UserRecord(
        user_id=str(obj["user_id"]),
        display_name=str(obj.get("name", "")),
        screen_name=str(obj.get("screen_name", "")),
        description=str(obj.get("description", "")),
        followers_count=int(obj.get("followers_count", 0)),
        friends_count=int(obj.get("friends_count", 0)),
        statuses_count=int(obj.get("statuses_count", 0)),
        created_at=created,
        url=obj.get("url"),
        county_fips=fips,
    )
    return TweetRecord(user, str(obj.get("tweet_id", "")), raw)


@dataclass
class CountyAggregate:
    county_fips: str
    n_tweets: int
    n_users: int
    n_person_users: int
    n_female: int
    n_male: int
    pct_female: float | None


def aggregate_by_county(tweets, person_model: ForestModel, stacked: StackedModel,
                        snapshot: datetime, person_threshold: float = 0.5,
                        feature_cfg: AccountFeatureConfig = AccountFeatureConfig()):
    """County rows sorted by tweet volume (descending, then fips).

    Users are deduplicated within a county (first occurrence wins); non-person
    accounts are removed; the rest are classified with the ensemble.  Output
    contains only county-level counts, never user identifiers.
    """
    by_county: dict[str, dict] = {}
    for tweet in tweets:
        bucket = by_county.setdefault(tweet.county_fips, {"n": 0, "users": {}})
        bucket["n"] += 1
        bucket["users"].setdefault(tweet.user_id, tweet.user)

    out = []
    for fips, bucket in by_county.items():
        users = list(bucket["users"].values())
        persons, _, _ = filter_persons(person_model, users, snapshot,
                                       stacked.stats, person_threshold, feature_cfg)
        n_f = n_m = 0
        for user in persons:
            pred = stacked.predict(user)
            if not pred.covered:
                continue
            if pred.label == FEMALE:
                n_f += 1
            else:
                n_m += 1
        pct = n_f / (n_f + n_m) if n_f + n_m else None
        out.append(CountyAggregate(fips, bucket["n"], len(users), len(persons),
                                   n_f, n_m, pct))
    out.sort(key=lambda a: (-a.n_tweets, a.county_fips))
    return out


def write_county_csv(aggregates, path):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(COUNTY_CSV_HEADER + "\n")
        for a in aggregates:
            pct = f"{a.pct_female:.4f}" if a.pct_female is not None else ""
            fh.write(f"{a.county_fips},{a.n_tweets},{a.n_users},"
                     f"{a.n_person_users},{a.n_female},{a.n_male},{pct}\n")
