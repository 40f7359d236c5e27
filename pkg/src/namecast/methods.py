"""The two learned gender methods.

The n-gram method featurizes the full cleaned display name (all tokens); the
linguistic method uses only the extracted first name.  Both cover exactly
the users whose name retains at least one Latin letter after cleaning.
Positive class is "female" throughout.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

from .errors import TrainingError
from .features import (CharClasses, DEFAULT_CLASSES, NgramConfig,
                       NgramVocabulary, build_vocabulary, extract_linguistic,
                       featurize_ngrams)
from .ml import (Dataset, LogisticConfig, SvmConfig, TreeConfig, WinnowConfig,
                 predict_score, train_balanced_winnow, train_decision_tree,
                 train_linear_svm, train_logistic, train_naive_bayes)
from .normalize import DEFAULT_STOP_TOKENS, cleaned_display_name, extract_first_name
from .records import (FEMALE, MALE, METHOD_LING, METHOD_NGRAM,
                      GenderPrediction, UserRecord)

LEARNER_KINDS = ("logistic", "linear_svm", "naive_bayes",
                 "decision_tree", "balanced_winnow")


@dataclass
class LearnerSettings:
    """Hyperparameters for all five learner kinds."""

    logistic: LogisticConfig = field(default_factory=LogisticConfig)
    svm: SvmConfig = field(default_factory=SvmConfig)
    nb_alpha: float = 1.0
    tree: TreeConfig = field(default_factory=TreeConfig)
    winnow: WinnowConfig = field(default_factory=WinnowConfig)

    def with_seed(self, seed):
        return LearnerSettings(
            logistic=dataclasses.replace(self.logistic, seed=seed),
            svm=dataclasses.replace(self.svm, seed=seed),
            nb_alpha=self.nb_alpha,
            tree=self.tree,
            winnow=dataclasses.replace(self.winnow, seed=seed),
        )


def train_learner(kind: str, data: Dataset, settings: LearnerSettings):
    if kind == "logistic":
        return train_logistic(data, settings.logistic)
    if kind == "linear_svm":
        return train_linear_svm(data, settings.svm)
    if kind == "naive_bayes":
        return train_naive_bayes(data, settings.nb_alpha)
    if kind == "decision_tree":
        return train_decision_tree(data, settings.tree)
    if kind == "balanced_winnow":
        return train_balanced_winnow(data, settings.winnow)
    raise ValueError(f"unknown learner kind {kind!r}")


@dataclass
class MethodModel:
    method: str                 # METHOD_NGRAM or METHOD_LING
    learner_kind: str
    model: object
    vocab: NgramVocabulary | None = None       # n-gram method only
    classes: CharClasses = DEFAULT_CLASSES     # linguistic method only
    stop_tokens: frozenset = DEFAULT_STOP_TOKENS
    meta: dict = field(default_factory=dict)

    def predict(self, user: UserRecord) -> GenderPrediction:
        return predict_method(self, user)


def gender_label01(user: UserRecord) -> int:
    if user.label_gender == FEMALE:
        return 1
    if user.label_gender == MALE:
        return 0
    raise TrainingError(
        f"user {user.user_id}: gender label must be female/male, got {user.label_gender!r}")


def train_method2(users, learner_kind: str = "linear_svm",
                  settings: LearnerSettings | None = None,
                  ngram_config: NgramConfig | None = None,
                  stop_tokens: frozenset = DEFAULT_STOP_TOKENS,
                  seed: int = 42) -> MethodModel:
    """Word/char n-gram method.  Rows whose name cleans to nothing are
    excluded and counted in meta["skipped"]."""
    settings = (settings or LearnerSettings()).with_seed(seed)
    names, labels, skipped = [], [], 0
    for user in users:
        cleaned = cleaned_display_name(user.display_name, stop_tokens)
        if not cleaned:
            skipped += 1
            continue
        names.append(cleaned)
        labels.append(gender_label01(user))
    if not names:
        raise TrainingError("no usable rows for the n-gram method")
    vocab = build_vocabulary(names, ngram_config)
    data = Dataset.from_vectors([featurize_ngrams(n, vocab) for n in names], labels)
    model = train_learner(learner_kind, data, settings)
    return MethodModel(METHOD_NGRAM, learner_kind, model, vocab=vocab,
                       stop_tokens=stop_tokens,
                       meta={"seed": seed, "train_size": len(names), "skipped": skipped})


def train_method3(users, learner_kind: str = "decision_tree",
                  settings: LearnerSettings | None = None,
                  classes: CharClasses = DEFAULT_CLASSES,
                  stop_tokens: frozenset = DEFAULT_STOP_TOKENS,
                  seed: int = 42) -> MethodModel:
    """Linguistic-structure method over the extracted first name.  Rows with
    no extractable first name are excluded and counted in meta["skipped"]."""
    settings = (settings or LearnerSettings()).with_seed(seed)
    vectors, labels, skipped = [], [], 0
    for user in users:
        first = extract_first_name(user.display_name, stop_tokens)
        if first is None:
            skipped += 1
            continue
        vectors.append(extract_linguistic(first.token, classes).to_vector())
        labels.append(gender_label01(user))
    if not vectors:
        raise TrainingError("no usable rows for the linguistic method")
    data = Dataset.from_vectors(vectors, labels)
    model = train_learner(learner_kind, data, settings)
    return MethodModel(METHOD_LING, learner_kind, model, classes=classes,
                       stop_tokens=stop_tokens,
                       meta={"seed": seed, "train_size": len(vectors), "skipped": skipped})


def predict_method(model: MethodModel, user: UserRecord) -> GenderPrediction:
    """Covered prediction when the method's input exists, else uncovered."""
    if model.method == METHOD_NGRAM:
        cleaned = cleaned_display_name(user.display_name, model.stop_tokens)
        if not cleaned:
            return GenderPrediction.uncovered(METHOD_NGRAM)
        vec = featurize_ngrams(cleaned, model.vocab)
        return GenderPrediction.of_probability(
            METHOD_NGRAM, predict_score(model.model, vec))
    first = extract_first_name(user.display_name, model.stop_tokens)
    if first is None:
        return GenderPrediction.uncovered(METHOD_LING)
    vec = extract_linguistic(first.token, model.classes).to_vector()
    return GenderPrediction.of_probability(
        METHOD_LING, predict_score(model.model, vec))
