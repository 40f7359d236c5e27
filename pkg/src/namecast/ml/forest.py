"""Random forest: bagged CART trees with per-node feature subsampling."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .data import Dataset
from .tree import TreeModel, _grow


@dataclass
class ForestConfig:
    n_trees: int = 100
    features_per_split: int | None = None  # None -> ceil(sqrt(dim))
    max_depth: int = 8
    min_samples_leaf: int = 5
    seed: int = 0
    bootstrap: bool = True  # test hook; disabling makes each tree see all rows


@dataclass
class ForestModel:
    trees: list[TreeModel]
    features_per_split: int
    dim: int

    @property
    def n_trees(self):
        return len(self.trees)

    def predict_proba(self, x):
        acc = 0.0
        for tree in self.trees:
            acc += tree.predict_proba(x)
        return acc / len(self.trees)


def train_random_forest(data: Dataset, cfg: ForestConfig | None = None) -> ForestModel:
    """Each tree trains on a bootstrap resample of size n; every node draws
    features_per_split candidate features.  One seeded generator drives all
    resampling, so a fixed seed reproduces the forest bit for bit."""
    cfg = cfg or ForestConfig()
    if cfg.n_trees < 1:
        raise ValueError("n_trees must be >= 1")
    fps = cfg.features_per_split
    if fps is None:
        fps = math.isqrt(data.dim)
        if fps * fps < data.dim:
            fps += 1
    if not 1 <= fps <= data.dim:
        raise ValueError("features_per_split out of range")

    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    n = data.n_rows
    sampling = 0 if fps >= data.dim else fps
    trees = []
    for _ in range(cfg.n_trees):
        if cfg.bootstrap:
            sample_idx = rng.integers(0, n, size=n, dtype=np.int64)
        else:
            sample_idx = np.arange(n, dtype=np.int64)
        node_seed = int(rng.integers(0, 2**64, dtype=np.uint64))
        trees.append(_grow(data, sample_idx, cfg.max_depth,
                           cfg.min_samples_leaf, sampling, node_seed))
    return ForestModel(trees, fps, data.dim)
