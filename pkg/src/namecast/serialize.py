"""Model persistence.

Files are a JSON envelope: {"magic": "NAMECAST-MODEL", "version": 1,
"kind": <tag>, "data": {...}}.  Numeric payloads are plain JSON numbers;
Python emits shortest round-tripping decimal for doubles, so save -> load ->
predict is bit-exact (asserted in tests).  Arrays are stored as lists.
"""

from __future__ import annotations

import json

import numpy as np

from .ensemble import StackedModel
from .errors import LoadError
from .features import CharClasses, NgramConfig, NgramVocabulary
from .methods import MethodModel
from .ml import (ForestModel, LinearModel, NBModel, TreeModel, WinnowModel)
from .records import METHOD_NGRAM
from .ssa import NameStats

MAGIC = "NAMECAST-MODEL"
VERSION = 1


def _f64(values):
    return np.asarray(values, dtype=np.float64)


def _i32(values):
    return np.asarray(values, dtype=np.int32)


def to_payload(model) -> dict:
    if isinstance(model, LinearModel):
        return {"kind": model.kind, "data": {
            "weights": model.weights.tolist(),
            "bias": float(model.bias),
            "calibration": [float(model.calibration[0]), float(model.calibration[1])],
        }}
    if isinstance(model, NBModel):
        return {"kind": "naive_bayes", "data": {
            "present_lr": model.present_lr.tolist(),
            "absent_lr": model.absent_lr.tolist(),
            "prior_lo": float(model.prior_lo),
            "alpha": float(model.alpha),
        }}
    if isinstance(model, TreeModel):
        return {"kind": "decision_tree", "data": _tree_data(model)}
    if isinstance(model, WinnowModel):
        return {"kind": "balanced_winnow", "data": {
            "u": model.u.tolist(),
            "v": model.v.tolist(),
            "theta": float(model.theta),
            "calibration": [float(model.calibration[0]), float(model.calibration[1])],
        }}
    if isinstance(model, ForestModel):
        return {"kind": "random_forest", "data": {
            "trees": [_tree_data(t) for t in model.trees],
            "features_per_split": model.features_per_split,
            "dim": model.dim,
        }}
    if isinstance(model, MethodModel):
        kind = "ngram_method" if model.method == METHOD_NGRAM else "linguistic_method"
        data = {
            "method": model.method,
            "learner_kind": model.learner_kind,
            "model": to_payload(model.model),
            "stop_tokens": sorted(model.stop_tokens),
            "meta": model.meta,
        }
        if model.vocab is not None:
            data["vocab"] = _vocab_data(model.vocab)
        else:
            data["classes"] = _classes_data(model.classes)
        return {"kind": kind, "data": data}
    if isinstance(model, StackedModel):
        return {"kind": "stacked_ensemble", "data": {
            "head3": to_payload(model.head3),
            "head2": to_payload(model.head2),
            "method2": to_payload(model.method2),
            "method3": to_payload(model.method3),
            "stats": _stats_data(model.stats),
            "oof_folds": model.oof_folds,
            "stop_tokens": sorted(model.stop_tokens),
        }}
    if isinstance(model, NameStats):
        return {"kind": "name_stats", "data": _stats_data(model)}
    raise TypeError(f"cannot serialize {type(model).__name__}")


def from_payload(payload: dict):
    kind = payload.get("kind")
    data = payload.get("data", {})
    if kind in ("logistic", "linear_svm"):
        return LinearModel(kind, _f64(data["weights"]), float(data["bias"]),
                           (data["calibration"][0], data["calibration"][1]))
    if kind == "naive_bayes":
        return NBModel(_f64(data["present_lr"]), _f64(data["absent_lr"]),
                       float(data["prior_lo"]), float(data["alpha"]))
    if kind == "decision_tree":
        return _tree_from(data)
    if kind == "balanced_winnow":
        return WinnowModel(_f64(data["u"]), _f64(data["v"]), float(data["theta"]),
                           (data["calibration"][0], data["calibration"][1]))
    if kind == "random_forest":
        return ForestModel([_tree_from(t) for t in data["trees"]],
                           int(data["features_per_split"]), int(data["dim"]))
    if kind in ("ngram_method", "linguistic_method"):
        vocab = _vocab_from(data["vocab"]) if "vocab" in data else None
        classes = _classes_from(data["classes"]) if "classes" in data else CharClasses()
        return MethodModel(data["method"], data["learner_kind"],
                           from_payload(data["model"]), vocab=vocab, classes=classes,
                           stop_tokens=frozenset(data["stop_tokens"]),
                           meta=data.get("meta", {}))
    if kind == "stacked_ensemble":
        return StackedModel(
            from_payload(data["head3"]), from_payload(data["head2"]),
            from_payload(data["method2"]), from_payload(data["method3"]),
            _stats_from(data["stats"]), int(data["oof_folds"]),
            frozenset(data["stop_tokens"]))
    if kind == "name_stats":
        return _stats_from(data)
    raise LoadError(f"unknown model kind {kind!r}")


def save_model(model, path):
    payload = to_payload(model)
    doc = {"magic": MAGIC, "version": VERSION,
           "kind": payload["kind"], "data": payload["data"]}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, separators=(",", ":"), allow_nan=False)
        fh.write("\n")


def load_model(path):
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise LoadError(f"{path}: not a model file ({exc})") from None
    if not isinstance(doc, dict) or doc.get("magic") != MAGIC:
        raise LoadError(f"{path}: missing {MAGIC} header")
    if doc.get("version") != VERSION:
        raise LoadError(f"{path}: unsupported version {doc.get('version')!r}")
    return from_payload(doc)


def _tree_data(tree: TreeModel) -> dict:
    return {
        "feature": tree.feature.tolist(),
        "threshold": tree.threshold.tolist(),
        "left": tree.left.tolist(),
        "right": tree.right.tolist(),
        "p_pos": tree.p_pos.tolist(),
        "n_node": tree.n_node.tolist(),
        "dim": tree.dim,
        "max_depth": tree.max_depth,
    }


def _tree_from(data: dict) -> TreeModel:
    return TreeModel(_i32(data["feature"]), _f64(data["threshold"]),
                     _i32(data["left"]), _i32(data["right"]),
                     _f64(data["p_pos"]), _i32(data["n_node"]),
                     int(data["dim"]), int(data["max_depth"]))


def _vocab_data(vocab: NgramVocabulary) -> dict:
    keys = [None] * vocab.size
    for gram, idx in vocab.index.items():
        keys[idx] = gram
    cfg = vocab.config
    return {"keys": keys, "config": {
        "char_n_min": cfg.char_n_min, "char_n_max": cfg.char_n_max,
        "include_word_unigrams": cfg.include_word_unigrams,
        "min_document_frequency": cfg.min_document_frequency,
        "max_features": cfg.max_features,
    }}


def _vocab_from(data: dict) -> NgramVocabulary:
    cfg = NgramConfig(**data["config"])
    return NgramVocabulary({g: i for i, g in enumerate(data["keys"])}, cfg)


def _classes_data(classes: CharClasses) -> dict:
    return {name: "".join(sorted(getattr(classes, name)))
            for name in CharClasses.__dataclass_fields__}


def _classes_from(data: dict) -> CharClasses:
    return CharClasses(**{name: frozenset(chars) for name, chars in data.items()})


def _stats_data(stats: NameStats) -> dict:
    return {"names": {k: [v[0], v[1]] for k, v in stats.counts.items()},
            "min_year": stats.min_year, "max_year": stats.max_year}


def _stats_from(data: dict) -> NameStats:
    return NameStats({k: (int(v[0]), int(v[1])) for k, v in data["names"].items()},
                     int(data["min_year"]), int(data["max_year"]))
