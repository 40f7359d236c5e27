"""Bernoulli naive Bayes with Laplace smoothing over binarized features."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import ConfigError
from ._common import require_both_labels, sigmoid
from .data import Dataset


@dataclass
class NBModel:
    # log-likelihood ratios log P(.|pos) - log P(.|neg), per feature
    present_lr: np.ndarray
    absent_lr: np.ndarray
    prior_lo: float
    alpha: float
    _absent_total: float = field(default=None, repr=False)  # type: ignore[assignment]

    def __post_init__(self):
        if self._absent_total is None:
            self._absent_total = float(np.sum(self.absent_lr))

    @property
    def dim(self):
        return int(self.present_lr.shape[0])

    def predict_proba(self, x):
        z = self.prior_lo + self._absent_total
        idx = x.indices
        vals = x.values
        for j in range(idx.shape[0]):
            if vals[j] != 0.0:
                f = idx[j]
                z += self.present_lr[f] - self.absent_lr[f]
        return sigmoid(z)


def train_naive_bayes(data: Dataset, alpha: float = 1.0) -> NBModel:
    """Presence = any nonzero stored value; theta = (df + alpha)/(n + 2*alpha)."""
    if alpha <= 0:
        raise ConfigError("naive Bayes smoothing alpha must be > 0")
    require_both_labels(data)
    n_neg, n_pos = data.class_counts()

    lengths = np.diff(data.indptr)
    row_of = np.repeat(np.arange(data.n_rows), lengths)
    active = data.values != 0.0
    idx = data.indices[active]
    is_pos = data.y[row_of[active]] == 1
    df_pos = np.bincount(idx[is_pos], minlength=data.dim).astype(np.float64)
    df_neg = np.bincount(idx[~is_pos], minlength=data.dim).astype(np.float64)

    theta_pos = (df_pos + alpha) / (n_pos + 2.0 * alpha)
    theta_neg = (df_neg + alpha) / (n_neg + 2.0 * alpha)
    present_lr = np.log(theta_pos) - np.log(theta_neg)
    absent_lr = np.log1p(-theta_pos) - np.log1p(-theta_neg)
    prior_lo = float(np.log(n_pos) - np.log(n_neg))
    return NBModel(present_lr, absent_lr, prior_lo, alpha)
