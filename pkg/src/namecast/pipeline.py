"""Pipeline orchestration: full training into a model bundle, and the
method-by-learner evaluation grid."""

from __future__ import annotations

import glob
import json
import os
from dataclasses import dataclass
from datetime import datetime

from .config import PipelineConfig
from .ensemble import StackedConfig, StackedModel, train_stacked
from .errors import ConfigError, LoadError, TrainingError
from .metrics import EvalReport, score, stratified_split
from .methods import (LEARNER_KINDS, gender_label01, train_method2,
                      train_method3)
from .ml import ForestModel
from .normalize import extract_first_name
from .person import (AccountFeatureConfig, extract_account_features,
                     person_label01, train_person_filter)
from .records import GenderPrediction, UserRecord
from .serialize import from_payload, to_payload
from .ssa import NameStats, classify_ssa, load_ssa_corpus

BUNDLE_MAGIC = "NAMECAST-BUNDLE"
BUNDLE_VERSION = 1

PERSON_POSITIVE = "person"
PERSON_NEGATIVE = "brand"


def load_ssa_dir(ssa_dir, min_year) -> NameStats:
    paths = sorted(glob.glob(os.path.join(ssa_dir, "*.txt")))
    if not paths:
        raise LoadError(f"no *.txt SSA files under {ssa_dir}")
    return load_ssa_corpus(paths, min_year)


@dataclass
class TrainedBundle:
    stacked: StackedModel
    person_forest: ForestModel
    snapshot: datetime
    feature_cfg: AccountFeatureConfig
    person_threshold: float
    seed: int

    @property
    def stats(self) -> NameStats:
        return self.stacked.stats


def train_bundle(gender_rows, person_rows, stats: NameStats,
                 cfg: PipelineConfig) -> TrainedBundle:
    """Train everything on the full labeled corpus: the two base methods plus
    the stacker, and the person filter (which also sees brand rows)."""
    if cfg.snapshot_date is None:
        raise ConfigError("data.snapshot_date is required to train the person filter")
    stacked = train_stacked(gender_rows, stats, _stacked_config(cfg))
    forest_cfg = _seeded_forest(cfg)
    person_forest = train_person_filter(person_rows, cfg.snapshot_date, stats,
                                        forest_cfg, cfg.feature_cfg)
    return TrainedBundle(stacked, person_forest, cfg.snapshot_date,
                         cfg.feature_cfg, cfg.person_threshold, cfg.seed)


def _stacked_config(cfg: PipelineConfig) -> StackedConfig:
    return StackedConfig(k=cfg.k_folds, seed=cfg.seed,
                         learner2=cfg.learner2, learner3=cfg.learner3,
                         settings=cfg.settings, ngram=cfg.ngram,
                         classes=cfg.classes, stop_tokens=cfg.stop_tokens)


def _seeded_forest(cfg: PipelineConfig):
    import dataclasses
    return dataclasses.replace(cfg.forest, seed=cfg.seed)


@dataclass
class EvalRow:
    method: str
    learner: str
    report: EvalReport


def run_full_evaluation(gender_rows, person_rows, stats: NameStats,
                        cfg: PipelineConfig,
                        learners=LEARNER_KINDS) -> list[EvalRow]:
    """The comparison grid: name matching, each learner under both learned
    methods, the stacked ensemble, and the person filter, all evaluated on
    held-out stratified test splits under one seed."""
    labels = [gender_label01(u) for u in gender_rows]
    train_ids, test_ids = stratified_split(labels, cfg.test_fraction, cfg.seed)
    train_users = [gender_rows[i] for i in train_ids]
    test_users = [gender_rows[i] for i in test_ids]
    truths = [u.label_gender for u in test_users]
    rows = []

    ssa_preds = [classify_ssa(extract_first_name(u.display_name, cfg.stop_tokens), stats)
                 for u in test_users]
    rows.append(EvalRow("ssa", "data_matching", score(ssa_preds, truths)))

    for kind in learners:
        m2 = train_method2(train_users, kind, cfg.settings, cfg.ngram,
                           cfg.stop_tokens, cfg.seed)
        rows.append(EvalRow("ngram", kind,
                            score([m2.predict(u) for u in test_users], truths)))
    for kind in learners:
        m3 = train_method3(train_users, kind, cfg.settings, cfg.classes,
                           cfg.stop_tokens, cfg.seed)
        rows.append(EvalRow("linguistic", kind,
                            score([m3.predict(u) for u in test_users], truths)))

    stacked = train_stacked(train_users, stats, _stacked_config(cfg))
    rows.append(EvalRow("ensemble", f"stacked_{cfg.learner2}+{cfg.learner3}",
                        score([stacked.predict(u) for u in test_users], truths)))

    if person_rows:
        rows.append(EvalRow("person_filter", "random_forest",
                            evaluate_person_filter(person_rows, stats, cfg)))
    return rows


def evaluate_person_filter(person_rows, stats: NameStats,
                           cfg: PipelineConfig) -> EvalReport:
    if cfg.snapshot_date is None:
        raise ConfigError("data.snapshot_date is required to evaluate the person filter")
    labeled = [(u, person_label01(u)) for u in person_rows]
    labeled = [(u, y) for u, y in labeled if y is not None]
    if not labeled:
        raise TrainingError("no person/brand labeled rows")
    y = [t[1] for t in labeled]
    train_ids, test_ids = stratified_split(y, cfg.test_fraction, cfg.seed)
    forest = train_person_filter([labeled[i][0] for i in train_ids],
                                 cfg.snapshot_date, stats,
                                 _seeded_forest(cfg), cfg.feature_cfg)
    preds, truths = [], []
    for i in test_ids:
        user, label = labeled[i]
        vec = extract_account_features(user, cfg.snapshot_date, stats,
                                       cfg.feature_cfg).to_vector()
        p = forest.predict_proba(vec)
        preds.append(GenderPrediction(
            "PERSON", True,
            PERSON_POSITIVE if p >= cfg.person_threshold else PERSON_NEGATIVE, p))
        truths.append(PERSON_POSITIVE if label == 1 else PERSON_NEGATIVE)
    return score(preds, truths, positive_class=PERSON_POSITIVE)


def classify_users(bundle: TrainedBundle, users) -> list[GenderPrediction]:
    return [bundle.stacked.predict(u) for u in users]


def save_bundle(bundle: TrainedBundle, path):
    doc = {
        "magic": BUNDLE_MAGIC,
        "version": BUNDLE_VERSION,
        "snapshot": bundle.snapshot.isoformat(),
        "person_threshold": bundle.person_threshold,
        "seed": bundle.seed,
        "feature_cfg": {
            "emoji_ranges": [list(r) for r in bundle.feature_cfg.emoji_ranges],
            "social_domains": sorted(bundle.feature_cfg.social_domains),
            "stop_tokens": sorted(bundle.feature_cfg.stop_tokens),
        },
        "stacked": to_payload(bundle.stacked),
        "person_forest": to_payload(bundle.person_forest),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, separators=(",", ":"), allow_nan=False)
        fh.write("\n")


def load_bundle(path) -> TrainedBundle:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise LoadError(f"{path}: not a bundle file ({exc})") from None
    if not isinstance(doc, dict) or doc.get("magic") != BUNDLE_MAGIC:
        raise LoadError(f"{path}: missing {BUNDLE_MAGIC} header")
    if doc.get("version") != BUNDLE_VERSION:
        raise LoadError(f"{path}: unsupported bundle version {doc.get('version')!r}")
    fc = doc["feature_cfg"]
    feature_cfg = AccountFeatureConfig(
        emoji_ranges=tuple((int(a), int(b)) for a, b in fc["emoji_ranges"]),
        social_domains=frozenset(fc["social_domains"]),
        stop_tokens=frozenset(fc["stop_tokens"]))
    return TrainedBundle(
        stacked=from_payload(doc["stacked"]),
        person_forest=from_payload(doc["person_forest"]),
        snapshot=datetime.fromisoformat(doc["snapshot"]),
        feature_cfg=feature_cfg,
        person_threshold=float(doc["person_threshold"]),
        seed=int(doc["seed"]),
    )
