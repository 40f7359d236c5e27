"""Pipeline configuration.

One TOML file covers every knob (column mappings, thresholds, seeds,
hyperparameters, snapshot date, resource paths, character classes, emoji
ranges, social domains).  Environment variables override file values:
``NAMECAST_<SECTION>__<KEY>`` (double underscore between path parts), with
values parsed as TOML literals, e.g. ``NAMECAST_TRAIN__SEED=7`` or
``NAMECAST_DATA__CONFIDENCE_THRESHOLD=0.9``.
"""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass, field
from datetime import date, datetime

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .errors import ConfigError
from .features import CharClasses, DEFAULT_CLASSES, NgramConfig, load_char_classes
from .methods import LEARNER_KINDS, LearnerSettings
from .ml import ForestConfig, LogisticConfig, SvmConfig, TreeConfig, WinnowConfig
from .normalize import DEFAULT_STOP_TOKENS, load_stop_tokens
from .person import AccountFeatureConfig, DEFAULT_EMOJI_RANGES, DEFAULT_SOCIAL_DOMAINS

ENV_PREFIX = "NAMECAST_"

# built-in soft column defaults; only columns listed explicitly in the config
# are required to exist in the corpus header
REQUIRED_COLUMNS = {"name": "name", "gender": "gender", "confidence": "gender:confidence"}
OPTIONAL_COLUMNS = {
    "user_id": "user_id", "screen_name": "screen_name",
    "description": "description", "created_at": "created",
    "statuses_count": "tweet_count", "followers_count": "followers_count",
    "friends_count": "friends_count", "url": "url", "county_fips": "county_fips",
}
DEFAULT_DATE_FORMATS = (
    "%Y-%m-%dT%H:%M:%S", "%Y-%m-%d %H:%M:%S", "%Y-%m-%d",
    "%m/%d/%y %H:%M", "%m/%d/%Y %H:%M:%S",
)


@dataclass
class PipelineConfig:
    columns: dict = field(default_factory=dict)      # explicitly configured only
    confidence_threshold: float = 1.0
    delimiter: str = ","
    date_formats: tuple = DEFAULT_DATE_FORMATS
    snapshot_date: datetime | None = None
    corpus_path: str | None = None
    ssa_dir: str | None = None
    min_year: int = 1940
    stop_tokens: frozenset = DEFAULT_STOP_TOKENS
    classes: CharClasses = DEFAULT_CLASSES
    ngram: NgramConfig = field(default_factory=NgramConfig)
    settings: LearnerSettings = field(default_factory=LearnerSettings)
    forest: ForestConfig = field(default_factory=ForestConfig)
    seed: int = 42
    test_fraction: float = 0.2
    k_folds: int = 5
    learner2: str = "linear_svm"
    learner3: str = "decision_tree"
    person_threshold: float = 0.5
    feature_cfg: AccountFeatureConfig = field(default_factory=AccountFeatureConfig)

    def column(self, name):
        if name in self.columns:
            return self.columns[name]
        return {**REQUIRED_COLUMNS, **OPTIONAL_COLUMNS}[name]


def load_config(path=None, env=None) -> PipelineConfig:
    """Read the TOML file (optional), apply environment overrides, validate."""
    env = os.environ if env is None else env
    raw = {}
    if path is not None:
        try:
            with open(path, "rb") as fh:
                raw = tomllib.load(fh)
        except FileNotFoundError:
            raise ConfigError(f"config file not found: {path}") from None
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"{path}: {exc}") from None
    _apply_env_overrides(raw, env)
    return _build(raw, base_dir=os.path.dirname(str(path)) if path else ".")


def _apply_env_overrides(raw, env):
    for key, value in env.items():
        if not key.startswith(ENV_PREFIX):
            continue
        parts = key[len(ENV_PREFIX):].lower().split("__")
        if key == "NAMECAST_KERNELS":  # backend selector, not a config key
            continue
        try:
            parsed = tomllib.loads(f"x = {value}")["x"]
        except tomllib.TOMLDecodeError:
            parsed = value
        node = raw
        for part in parts[:-1]:
            node = node.setdefault(part, {})
            if not isinstance(node, dict):
                raise ConfigError(f"env override {key} conflicts with config structure")
        node[parts[-1]] = parsed


def _build(raw, base_dir) -> PipelineConfig:
    cfg = PipelineConfig()
    data = raw.get("data", {})
    cfg.columns = dict(data.get("columns", {}))
    cfg.confidence_threshold = float(data.get("confidence_threshold", 1.0))
    if not 0.0 <= cfg.confidence_threshold <= 1.0:
        raise ConfigError("data.confidence_threshold must be in [0, 1]")
    cfg.delimiter = str(data.get("delimiter", ","))
    if "date_formats" in data:
        cfg.date_formats = tuple(data["date_formats"])
    snap = data.get("snapshot_date")
    if snap is not None:
        cfg.snapshot_date = _as_datetime(snap, "data.snapshot_date")
    if "corpus" in data:
        cfg.corpus_path = _existing_path(data["corpus"], base_dir, "data.corpus")

    ssa = raw.get("ssa", {})
    if "dir" in ssa:
        cfg.ssa_dir = _existing_path(ssa["dir"], base_dir, "ssa.dir")
    cfg.min_year = int(ssa.get("min_year", 1940))

    norm = raw.get("normalize", {})
    if "stop_list" in norm:
        cfg.stop_tokens = load_stop_tokens(
            _existing_path(norm["stop_list"], base_dir, "normalize.stop_list"))

    ling = raw.get("linguistic", {})
    if "char_classes" in ling:
        cfg.classes = load_char_classes(
            _existing_path(ling["char_classes"], base_dir, "linguistic.char_classes"))

    ng = raw.get("ngrams", {})
    cfg.ngram = NgramConfig(
        char_n_min=int(ng.get("char_n_min", 1)),
        char_n_max=int(ng.get("char_n_max", 3)),
        include_word_unigrams=bool(ng.get("include_word_unigrams", True)),
        min_document_frequency=int(ng.get("min_document_frequency", 2)),
        max_features=int(ng.get("max_features", 50_000)),
    )

    lr = raw.get("learners", {})
    cfg.settings = LearnerSettings(
        logistic=LogisticConfig(
            learning_rate=float(lr.get("logistic_learning_rate", 0.1)),
            epochs=int(lr.get("logistic_epochs", 20)),
            l2=float(lr.get("logistic_l2", 1e-4))),
        svm=SvmConfig(
            lam=float(lr.get("svm_lambda", 1e-4)),
            epochs=int(lr.get("svm_epochs", 20))),
        nb_alpha=float(lr.get("nb_alpha", 1.0)),
        tree=TreeConfig(
            max_depth=int(lr.get("tree_max_depth", 8)),
            min_samples_leaf=int(lr.get("tree_min_samples_leaf", 5))),
        winnow=WinnowConfig(
            alpha=float(lr.get("winnow_alpha", 1.5)),
            beta=float(lr.get("winnow_beta", 0.5)),
            theta=float(lr.get("winnow_theta", 1.0)),
            epochs=int(lr.get("winnow_epochs", 10))),
    )
    cfg.forest = ForestConfig(
        n_trees=int(lr.get("forest_n_trees", 100)),
        features_per_split=lr.get("forest_features_per_split"),
        max_depth=int(lr.get("forest_max_depth", 8)),
        min_samples_leaf=int(lr.get("forest_min_samples_leaf", 5)),
    )

    train = raw.get("train", {})
    cfg.seed = int(train.get("seed", 42))
    cfg.test_fraction = float(train.get("test_fraction", 0.2))
    cfg.k_folds = int(train.get("k_folds", 5))
    cfg.learner2 = str(train.get("learner2", "linear_svm"))
    cfg.learner3 = str(train.get("learner3", "decision_tree"))
    for name in (cfg.learner2, cfg.learner3):
        if name not in LEARNER_KINDS:
            raise ConfigError(f"unknown learner kind {name!r}")
    cfg.person_threshold = float(train.get("person_threshold", 0.5))
    if not 0.0 <= cfg.person_threshold <= 1.0:
        raise ConfigError("train.person_threshold must be in [0, 1]")

    person = raw.get("person", {})
    emoji = tuple(_parse_range(r) for r in person.get("emoji_ranges", ())) \
        or DEFAULT_EMOJI_RANGES
    social = frozenset(s.lower() for s in person.get("social_domains", ())) \
        or DEFAULT_SOCIAL_DOMAINS
    cfg.feature_cfg = AccountFeatureConfig(
        emoji_ranges=emoji, social_domains=social, stop_tokens=cfg.stop_tokens)
    return cfg


def apply_seed(cfg: PipelineConfig, seed: int | None) -> PipelineConfig:
    if seed is None:
        return cfg
    out = dataclasses.replace(cfg)
    out.seed = int(seed)
    return out


def _parse_range(spec) -> tuple[int, int]:
    if isinstance(spec, (list, tuple)) and len(spec) == 2:
        return int(spec[0]), int(spec[1])
    lo, _, hi = str(spec).partition("-")
    try:
        return int(lo, 16), int(hi, 16)
    except ValueError:
        raise ConfigError(f"bad emoji range {spec!r} (want 'LO-HI' hex)") from None


def _as_datetime(value, where) -> datetime:
    if isinstance(value, datetime):
        return value
    if isinstance(value, date):
        return datetime(value.year, value.month, value.day)
    try:
        return datetime.fromisoformat(str(value))
    except ValueError:
        raise ConfigError(f"{where}: cannot parse date {value!r}") from None


def _existing_path(value, base_dir, where) -> str:
    path = str(value)
    if not os.path.isabs(path):
        path = os.path.normpath(os.path.join(base_dir, path))
    if not os.path.exists(path):
        raise ConfigError(f"{where}: path does not exist: {path}")
    return path
