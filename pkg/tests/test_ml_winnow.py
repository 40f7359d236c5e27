import numpy as np
import pytest

from namecast.errors import TrainingError
from namecast.ml import (Dataset, FeatureVector, WinnowConfig,
                         train_balanced_winnow)


def _with_bias_column(rows):
    # winnow needs at least one active feature per row
    return np.hstack([np.asarray(rows, dtype=float), np.ones((len(rows), 1))])


def test_perfect_feature_learned():
    X = _with_bias_column([[1.0, 0.0]] * 10 + [[0.0, 1.0]] * 10)
    y = [1] * 10 + [0] * 10
    model = train_balanced_winnow(Dataset.from_dense(X, y),
                                  WinnowConfig(epochs=20, calibration_fraction=0.2))
    correct = sum(model.predict_label(FeatureVector.from_dense(row)) == label
                  for row, label in zip(X, y))
    assert correct == len(y)
    assert model.u[0] - model.v[0] > 0


def test_identical_rows_mixed_labels_bounded():
    X = np.ones((20, 2))
    y = [1] * 15 + [0] * 5
    model = train_balanced_winnow(Dataset.from_dense(X, y), WinnowConfig(epochs=5))
    correct = sum(model.predict_label(FeatureVector.from_dense(row)) == label
                  for row, label in zip(X, y))
    assert correct / len(y) <= 15 / 20


def test_zero_epochs_all_negative():
    X = _with_bias_column([[1.0], [0.0]] * 5)
    y = [1, 0] * 5
    model = train_balanced_winnow(Dataset.from_dense(X, y), WinnowConfig(epochs=0))
    assert np.array_equal(model.u, model.v)
    for row in X:
        vec = FeatureVector.from_dense(row)
        assert model.score(vec) == 0.0
        assert model.predict_label(vec) == 0  # 0 < theta


def test_empty_row_rejected():
    X = np.array([[1.0, 0.0], [0.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
    y = [1, 0, 0, 1]
    with pytest.raises(TrainingError):
        train_balanced_winnow(Dataset.from_dense(X, y))


def test_invalid_factors_rejected():
    X = _with_bias_column([[1.0], [0.0]] * 3)
    y = [1, 0] * 3
    with pytest.raises(ValueError):
        train_balanced_winnow(Dataset.from_dense(X, y), WinnowConfig(alpha=0.9))
    with pytest.raises(ValueError):
        train_balanced_winnow(Dataset.from_dense(X, y), WinnowConfig(beta=1.5))


def test_values_binarized_for_prediction():
    X = _with_bias_column([[5.0, 0.0]] * 8 + [[0.0, 3.0]] * 8)
    y = [1] * 8 + [0] * 8
    model = train_balanced_winnow(Dataset.from_dense(X, y), WinnowConfig(epochs=20))
    # score treats any nonzero as presence
    a = model.score(FeatureVector.from_dense([5.0, 0.0, 1.0]))
    b = model.score(FeatureVector.from_dense([1.0, 0.0, 1.0]))
    assert a == b
