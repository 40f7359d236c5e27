"""From-scratch supervised learners shared by the gender methods, the person
filter, and the stacked meta-model."""

from .data import Dataset, FeatureVector
from .forest import ForestConfig, ForestModel, train_random_forest
from .linear import (LinearModel, LogisticConfig, SvmConfig, platt_calibrate,
                     train_linear_svm, train_logistic)
from .naive_bayes import NBModel, train_naive_bayes
from .tree import TreeConfig, TreeModel, train_decision_tree
from .winnow import WinnowConfig, WinnowModel, train_balanced_winnow

MODEL_KINDS = (LinearModel, NBModel, TreeModel, WinnowModel, ForestModel)


def predict_score(model, x) -> float:
    """Calibrated probability of the positive class for one feature vector."""
    if x.dim != model.dim:
        raise ValueError(f"dimension mismatch: vector {x.dim}, model {model.dim}")
    return float(model.predict_proba(x))


__all__ = [
    "Dataset", "FeatureVector", "predict_score",
    "LinearModel", "LogisticConfig", "SvmConfig",
    "train_logistic", "train_linear_svm", "platt_calibrate",
    "NBModel", "train_naive_bayes",
    "TreeConfig", "TreeModel", "train_decision_tree",
    "WinnowConfig", "WinnowModel", "train_balanced_winnow",
    "ForestConfig", "ForestModel", "train_random_forest",
]
