"""CART decision trees on Gini impurity.

Split selection is exact: candidate quality is compared as integer rationals,
so tree structure does not depend on float rounding (and matches the brute
force enumeration oracle used in the tests).  Binary presence data takes a
sparse counting path; anything else goes through the dense scan.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import _kernels
from .data import Dataset


@dataclass
class TreeConfig:
    max_depth: int = 8
    min_samples_leaf: int = 5


@dataclass
class TreeModel:
    feature: np.ndarray    # int32; -1 marks a leaf
    threshold: np.ndarray  # float64; x <= threshold routes left
    left: np.ndarray
    right: np.ndarray
    p_pos: np.ndarray
    n_node: np.ndarray
    dim: int
    max_depth: int

    @property
    def n_nodes(self):
        return int(self.feature.shape[0])

    def predict_proba(self, x):
        nid = 0
        while self.feature[nid] >= 0:
            if x.value_at(int(self.feature[nid])) <= self.threshold[nid]:
                nid = int(self.left[nid])
            else:
                nid = int(self.right[nid])
        return float(self.p_pos[nid])


def _grow(data: Dataset, sample_idx, max_depth, min_samples_leaf,
          features_per_split, seed) -> TreeModel:
    if data.is_binary:
        arrays = _kernels.build_tree_sparse(
            data.indices, data.indptr, data.y, sample_idx, data.dim,
            max_depth, min_samples_leaf, features_per_split, seed)
    else:
        arrays = _kernels.build_tree_dense(
            data.to_dense(), data.y, sample_idx,
            max_depth, min_samples_leaf, features_per_split, seed)
    return TreeModel(*arrays, dim=data.dim, max_depth=max_depth)


def train_decision_tree(data: Dataset, cfg: TreeConfig | None = None) -> TreeModel:
    """Greedy CART; stops on depth, leaf size, purity, or no positive gain.
    Ties between equally good splits go to the lower feature index, then the
    lower threshold.  Pure-label data yields a single leaf."""
    cfg = cfg or TreeConfig()
    if cfg.max_depth < 0 or cfg.min_samples_leaf < 1:
        raise ValueError("invalid tree configuration")
    sample_idx = np.arange(data.n_rows, dtype=np.int64)
    return _grow(data, sample_idx, cfg.max_depth, cfg.min_samples_leaf, 0, 0)
