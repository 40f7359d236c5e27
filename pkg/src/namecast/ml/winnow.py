"""Balanced winnow: positive/negative multiplicative weight vectors."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import _kernels
from ..errors import TrainingError
from ._common import require_both_labels, shuffled_order, sigmoid
from .data import Dataset


@dataclass
class WinnowConfig:
    alpha: float = 1.5
    beta: float = 0.5
    theta: float = 1.0
    epochs: int = 10
    seed: int = 0
    calibration_fraction: float = 0.2


@dataclass
class WinnowModel:
    u: np.ndarray
    v: np.ndarray
    theta: float
    calibration: tuple[float, float] = (1.0, 0.0)

    @property
    def dim(self):
        return int(self.u.shape[0])

    def score(self, x):
        """(u - v) . x over active (nonzero) features, treated as presence."""
        acc = 0.0
        idx = x.indices
        vals = x.values
        for j in range(idx.shape[0]):
            if vals[j] != 0.0:
                f = idx[j]
                acc += self.u[f] - self.v[f]
        return acc

    def predict_label(self, x):
        """Raw mistake-driven rule: positive iff score >= theta."""
        return 1 if self.score(x) >= self.theta else 0

    def predict_proba(self, x):
        a, b = self.calibration
        return sigmoid(a * self.score(x) + b)


def train_balanced_winnow(data: Dataset, cfg: WinnowConfig | None = None) -> WinnowModel:
    """Mistake-driven multiplicative updates on binarized features, then Platt
    scaling of scores on a held-in calibration slice (as for the SVM)."""
    from ..metrics import stratified_split
    from .linear import platt_calibrate

    cfg = cfg or WinnowConfig()
    if not (cfg.alpha > 1.0 and 0.0 < cfg.beta < 1.0):
        raise ValueError("winnow needs alpha > 1 and beta in (0,1)")
    require_both_labels(data)
    binary = data.binarized()
    if np.any(np.diff(binary.indptr) == 0):
        raise TrainingError("winnow requires at least one active feature per row")

    fit_ids, cal_ids = stratified_split(binary.y, cfg.calibration_fraction, cfg.seed)
    fit = binary.subset(fit_ids)
    cal = binary.subset(cal_ids)

    order = shuffled_order(fit.n_rows, cfg.epochs, cfg.seed)
    u, v = _kernels.train_winnow(
        fit.indices, fit.indptr, fit.y, order, fit.dim,
        cfg.alpha, cfg.beta, cfg.theta)
    if not (np.all(np.isfinite(u)) and np.all(np.isfinite(v))):
        raise TrainingError("winnow training diverged (non-finite weights)")

    model = WinnowModel(u, v, cfg.theta)
    scores = [model.score(cal.row(i)) for i in range(cal.n_rows)]
    model.calibration = platt_calibrate(scores, cal.y, seed=cfg.seed)
    return model
