"""Linear models: logistic regression and Pegasos-style linear SVM, plus
Platt scaling used to turn raw margins into probabilities.

Calibration convention everywhere: p = sigmoid(A * margin + B).  Logistic
models carry the identity calibration (A=1, B=0) since their margin is
already a log-odds.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import _kernels
from ..errors import TrainingError
from ._common import require_both_labels, shuffled_order, sigmoid, sparse_dot
from .data import Dataset


@dataclass
class LogisticConfig:
    learning_rate: float = 0.1
    epochs: int = 20
    l2: float = 1e-4
    seed: int = 0


@dataclass
class SvmConfig:
    lam: float = 1e-4
    epochs: int = 20
    seed: int = 0
    calibration_fraction: float = 0.2


@dataclass
class LinearModel:
    kind: str
    weights: np.ndarray
    bias: float
    calibration: tuple[float, float] = (1.0, 0.0)

    @property
    def dim(self):
        return int(self.weights.shape[0])

    def margin(self, x):
        return sparse_dot(self.weights, x) + self.bias

    def predict_proba(self, x):
        a, b = self.calibration
        return sigmoid(a * self.margin(x) + b)


def train_logistic(data: Dataset, cfg: LogisticConfig | None = None) -> LinearModel:
    """Seeded SGD on L2-regularized logistic loss; per-epoch shuffling."""
    cfg = cfg or LogisticConfig()
    require_both_labels(data)
    order = shuffled_order(data.n_rows, cfg.epochs, cfg.seed)
    w, b = _kernels.train_logistic(
        data.indices, data.indptr, data.values,
        data.y.astype(np.float64), order, data.dim,
        cfg.learning_rate, cfg.l2)
    if not (np.all(np.isfinite(w)) and np.isfinite(b)):
        raise TrainingError(
            "logistic training diverged (non-finite weights); lower the learning rate")
    return LinearModel("logistic", w, b)


def train_linear_svm(data: Dataset, cfg: SvmConfig | None = None) -> LinearModel:
    """Pegasos hinge-loss SGD.  A stratified calibration slice (default 20%)
    is held out of weight fitting and used to Platt-scale the margins."""
    from ..metrics import stratified_split

    cfg = cfg or SvmConfig()
    require_both_labels(data)
    fit_ids, cal_ids = stratified_split(data.y, cfg.calibration_fraction, cfg.seed)
    fit = data.subset(fit_ids)
    cal = data.subset(cal_ids)

    order = shuffled_order(fit.n_rows, cfg.epochs, cfg.seed)
    ypm = fit.y.astype(np.float64) * 2.0 - 1.0
    w, b = _kernels.train_pegasos(
        fit.indices, fit.indptr, fit.values, ypm, order, fit.dim, cfg.lam)
    if not (np.all(np.isfinite(w)) and np.isfinite(b)):
        raise TrainingError("svm training diverged (non-finite weights)")

    model = LinearModel("linear_svm", w, b)
    margins = [model.margin(cal.row(i)) for i in range(cal.n_rows)]
    model.calibration = platt_calibrate(margins, cal.y, seed=cfg.seed)
    return model


def platt_calibrate(margins, labels, seed: int = 0) -> tuple[float, float]:
    """Fit p = sigmoid(A*m + B) to binary labels with the same SGD used by
    train_logistic on the 1-D margin feature."""
    margins = np.asarray(margins, dtype=np.float64)
    labels = np.asarray(labels)
    if margins.shape[0] != labels.shape[0]:
        raise ValueError("margins and labels must have equal length")
    data = Dataset.from_dense(margins.reshape(-1, 1), labels)
    require_both_labels(data)
    model = train_logistic(data, LogisticConfig(epochs=50, l2=1e-6, seed=seed))
    return float(model.weights[0]), float(model.bias)
