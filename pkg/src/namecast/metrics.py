"""Splits, cross-validation folds, classification metrics, and bootstrap
confidence intervals.

Metrics are computed over covered predictions only; coverage is reported
alongside so a high-accuracy low-coverage method is visible as such.
The positive class defaults to "female" everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .records import FEMALE


@dataclass
class EvalReport:
    tp: int
    fp: int
    tn: int
    fn: int
    n_total: int
    n_covered: int
    accuracy: float | None
    precision: float | None
    recall: float | None
    f1: float | None
    coverage: float
    bootstrap: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            "tp": self.tp, "fp": self.fp, "tn": self.tn, "fn": self.fn,
            "n_total": self.n_total, "n_covered": self.n_covered,
            "accuracy": self.accuracy, "precision": self.precision,
            "recall": self.recall, "f1": self.f1, "coverage": self.coverage,
        }


@dataclass(frozen=True)
class BootstrapInterval:
    point: float
    lower: float
    upper: float
    b: int
    seed: int
    n_skipped: int


def stratified_split(labels, test_fraction, seed):
    """Split row indices into (train, test) preserving class shares.

    Each class contributes round(n_c * test_fraction) rows to the test part,
    clamped so both parts keep at least one row per class.  Returns sorted
    int64 index arrays; deterministic under seed.
    """
    if not 0.0 < test_fraction < 1.0:
        raise ValueError("test_fraction must be in (0, 1)")
    y = _binary_labels(labels)
    rng = np.random.Generator(np.random.PCG64(seed))
    train_parts, test_parts = [], []
    for cls in (0, 1):
        ids = np.nonzero(y == cls)[0]
        n_c = ids.shape[0]
        if n_c == 0:
            raise ValueError("both classes must be present")
        if n_c < 2:
            raise ValueError(
                "cannot stratify: a class has a single row (need at least 2)")
        t_c = int(np.floor(n_c * test_fraction + 0.5))
        t_c = min(max(t_c, 1), n_c - 1)
        perm = rng.permutation(n_c)
        test_parts.append(ids[perm[:t_c]])
        train_parts.append(ids[perm[t_c:]])
    train = np.sort(np.concatenate(train_parts))
    test = np.sort(np.concatenate(test_parts))
    return train, test


def kfold_indices(n, k, labels, seed):
    """k disjoint stratified folds partitioning range(n).  Per-fold class
    counts are within 1 of proportional (round-robin dealing per class)."""
    if not 2 <= k <= n:
        raise ValueError("k must satisfy 2 <= k <= n")
    y = _binary_labels(labels)
    if y.shape[0] != n:
        raise ValueError("labels must have length n")
    rng = np.random.Generator(np.random.PCG64(seed))
    folds = [[] for _ in range(k)]
    cursor = 0
    for cls in (0, 1):
        ids = np.nonzero(y == cls)[0]
        perm = rng.permutation(ids.shape[0])
        for j, row in enumerate(ids[perm]):
            folds[(cursor + j) % k].append(int(row))
        cursor += ids.shape[0]
    return [np.sort(np.array(f, dtype=np.int64)) for f in folds]


def score(predictions, truths, positive_class=FEMALE) -> EvalReport:
    """Confusion counts and derived metrics; uncovered predictions count
    toward n_total only.  Undefined metrics come back as None."""
    if len(predictions) != len(truths):
        raise ValueError("predictions and truths must have equal length")
    tp = fp = tn = fn = 0
    n_covered = 0
    for pred, truth in zip(predictions, truths):
        if not pred.covered:
            continue
        n_covered += 1
        pred_pos = pred.label == positive_class
        true_pos = truth == positive_class
        if pred_pos and true_pos:
            tp += 1
        elif pred_pos and not true_pos:
            fp += 1
        elif not pred_pos and true_pos:
            fn += 1
        else:
            tn += 1
    n_total = len(predictions)
    accuracy = (tp + tn) / n_covered if n_covered else None
    precision = tp / (tp + fp) if tp + fp else None
    recall = tp / (tp + fn) if tp + fn else None
    if precision is not None and recall is not None and precision + recall > 0:
        f1 = 2.0 * precision * recall / (precision + recall)
    else:
        f1 = None
    coverage = n_covered / n_total if n_total else 0.0
    return EvalReport(tp, fp, tn, fn, n_total, n_covered,
                      accuracy, precision, recall, f1, coverage)


def bootstrap_metric(predictions, truths, metric="accuracy", b=1000, seed=0,
                     positive_class=FEMALE) -> BootstrapInterval:
    """Percentile (2.5%, 97.5%) bootstrap over resamples of (prediction,
    truth) pairs.  Resamples where the metric is undefined are skipped and
    counted; more than 10% skipped is an error."""
    if b < 100:
        raise ValueError("bootstrap needs at least 100 resamples")
    full = score(predictions, truths, positive_class)
    point = getattr(full, metric)
    if full.n_covered == 0 or point is None:
        raise ValueError("metric undefined on the full sample")
    n = len(predictions)
    rng = np.random.Generator(np.random.PCG64(seed))
    stats = []
    skipped = 0
    for _ in range(b):
        ids = rng.integers(0, n, size=n)
        rep = score([predictions[i] for i in ids], [truths[i] for i in ids],
                    positive_class)
        value = getattr(rep, metric)
        if value is None:
            skipped += 1
        else:
            stats.append(value)
    if skipped > 0.1 * b:
        raise ValueError(f"{skipped}/{b} bootstrap resamples were degenerate")
    lower, upper = np.percentile(np.array(stats), [2.5, 97.5])
    return BootstrapInterval(float(point), float(lower), float(upper), b, seed, skipped)


def _binary_labels(labels):
    if isinstance(labels, np.ndarray) and labels.dtype != object:
        y = labels.astype(np.int64)
    else:
        y = np.array([int(v) for v in labels], dtype=np.int64)
    if not np.all((y == 0) | (y == 1)):
        raise ValueError("labels must be binary 0/1")
    return y
