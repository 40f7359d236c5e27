"""Coverage-routed stacked ensemble over the three base methods.

A logistic meta-model learns to combine base probabilities.  Two heads exist
because the name-records matcher covers only part of the population: users
whose first name it knows go to the three-input head, everyone else to the
two-input head.  Head training uses out-of-fold base predictions from k-fold
cross-fitting on the training split, so the meta-model never sees predictions
from a model that was fit on the same row.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import TrainingError
from .features import CharClasses, DEFAULT_CLASSES, NgramConfig
from .metrics import kfold_indices
from .ml import Dataset, FeatureVector, LinearModel, LogisticConfig, train_logistic
from .methods import (LearnerSettings, MethodModel, gender_label01,
                      train_method2, train_method3)
from .normalize import DEFAULT_STOP_TOKENS, extract_first_name
from .records import METHOD_ENSEMBLE, GenderPrediction, UserRecord
from .ssa import NameStats, classify_ssa


@dataclass
class StackedConfig:
    k: int = 5
    seed: int = 42
    learner2: str = "linear_svm"
    learner3: str = "decision_tree"
    settings: LearnerSettings = field(default_factory=LearnerSettings)
    ngram: NgramConfig | None = None
    classes: CharClasses = DEFAULT_CLASSES
    stop_tokens: frozenset = DEFAULT_STOP_TOKENS
    meta: LogisticConfig = field(default_factory=lambda: LogisticConfig(epochs=50))


@dataclass
class StackedModel:
    head3: LinearModel          # inputs (p_ssa, p_ngram, p_ling)
    head2: LinearModel          # inputs (p_ngram, p_ling)
    method2: MethodModel
    method3: MethodModel
    stats: NameStats
    oof_folds: int
    stop_tokens: frozenset = DEFAULT_STOP_TOKENS

    def predict(self, user: UserRecord) -> GenderPrediction:
        return predict_ensemble(self, user)


def fit_stacking_heads(p_ssa, ssa_covered, p_ngram, p_ling, labels,
                       cfg: LogisticConfig) -> tuple[LinearModel, LinearModel]:
    """Fit the two heads from (out-of-fold) base probabilities.

    head3 trains on the rows the name matcher covered, head2 on all rows.
    """
    p_ngram = np.asarray(p_ngram, dtype=np.float64)
    p_ling = np.asarray(p_ling, dtype=np.float64)
    p_ssa = np.asarray(p_ssa, dtype=np.float64)
    covered = np.asarray(ssa_covered, dtype=bool)
    y = np.asarray(labels, dtype=np.int8)

    head2 = train_logistic(
        Dataset.from_dense(np.column_stack([p_ngram, p_ling]), y), cfg)
    if not covered.any():
        raise TrainingError("no rows covered by name matching; cannot fit the 3-input head")
    head3 = train_logistic(
        Dataset.from_dense(
            np.column_stack([p_ssa[covered], p_ngram[covered], p_ling[covered]]),
            y[covered]), cfg)
    return head3, head2


def train_stacked(users, stats: NameStats, cfg: StackedConfig | None = None) -> StackedModel:
    """k-fold out-of-fold stacking, then base methods retrained on the full
    training split for deployment."""
    cfg = cfg or StackedConfig()
    if cfg.k < 2:
        raise ValueError("stacking needs k >= 2 folds (k=1 has no out-of-fold rows)")

    usable = [u for u in users
              if extract_first_name(u.display_name, cfg.stop_tokens) is not None]
    if not usable:
        raise TrainingError("no users with an extractable name")
    y = np.array([gender_label01(u) for u in usable], dtype=np.int8)
    n = len(usable)

    folds = kfold_indices(n, cfg.k, y, cfg.seed)
    for fold in folds:
        if len(set(y[fold].tolist())) < 2:
            raise TrainingError(
                "a cross-fitting fold contains a single class; "
                "use stratified folds or more data per class")

    p_ssa = np.full(n, 0.5, dtype=np.float64)
    covered = np.zeros(n, dtype=bool)
    p2 = np.zeros(n, dtype=np.float64)
    p3 = np.zeros(n, dtype=np.float64)

    for i, user in enumerate(usable):
        pred = classify_ssa(extract_first_name(user.display_name, cfg.stop_tokens), stats)
        if pred.covered:
            covered[i] = True
            p_ssa[i] = pred.p_female

    in_fold = np.zeros(n, dtype=np.int64)
    for fi, fold in enumerate(folds):
        in_fold[fold] = fi
    for fi, fold in enumerate(folds):
        train_ids = np.nonzero(in_fold != fi)[0]
        train_users = [usable[i] for i in train_ids]
        m2 = train_method2(train_users, cfg.learner2, cfg.settings,
                           cfg.ngram, cfg.stop_tokens, cfg.seed)
        m3 = train_method3(train_users, cfg.learner3, cfg.settings,
                           cfg.classes, cfg.stop_tokens, cfg.seed)
        for i in fold:
            p2[i] = m2.predict(usable[i]).p_female
            p3[i] = m3.predict(usable[i]).p_female

    head3, head2 = fit_stacking_heads(p_ssa, covered, p2, p3, y, cfg.meta)

    method2 = train_method2(usable, cfg.learner2, cfg.settings,
                            cfg.ngram, cfg.stop_tokens, cfg.seed)
    method3 = train_method3(usable, cfg.learner3, cfg.settings,
                            cfg.classes, cfg.stop_tokens, cfg.seed)
    return StackedModel(head3, head2, method2, method3, stats, cfg.k, cfg.stop_tokens)


def predict_ensemble(model: StackedModel, user: UserRecord) -> GenderPrediction:
    """Route by name-matcher coverage: known first name -> 3-input head,
    otherwise 2-input head.  Uncovered only when no name is extractable."""
    first = extract_first_name(user.display_name, model.stop_tokens)
    if first is None:
        return GenderPrediction.uncovered(METHOD_ENSEMBLE)
    p2 = model.method2.predict(user).p_female
    p3 = model.method3.predict(user).p_female
    ssa_pred = classify_ssa(first, model.stats)
    if ssa_pred.covered:
        vec = FeatureVector.from_dense([ssa_pred.p_female, p2, p3])
        p = model.head3.predict_proba(vec)
    else:
        vec = FeatureVector.from_dense([p2, p3])
        p = model.head2.predict_proba(vec)
    return GenderPrediction.of_probability(METHOD_ENSEMBLE, p)
