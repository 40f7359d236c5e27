"""Feature vectors and datasets for the learners.

Datasets are stored in CSR form (indices sorted within each row); a dense
matrix view is kept or materialized for tree building on non-binary data.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class FeatureVector:
    """Sparse vector: sorted feature indices, parallel values, dimension."""

    indices: np.ndarray
    values: np.ndarray
    dim: int

    @classmethod
    def from_pairs(cls, pairs, dim):
        """Build from an iterable of (index, value) pairs or a dict."""
        if isinstance(pairs, dict):
            pairs = pairs.items()
        items = sorted((int(i), float(v)) for i, v in pairs)
        idx = np.array([i for i, _ in items], dtype=np.int32)
        vals = np.array([v for _, v in items], dtype=np.float64)
        if idx.size and (idx[0] < 0 or idx[-1] >= dim):
            raise ValueError("feature index out of range")
        if not np.all(np.isfinite(vals)):
            raise ValueError("feature values must be finite")
        return cls(idx, vals, dim)

    @classmethod
    def from_dense(cls, row):
        arr = np.asarray(row, dtype=np.float64)
        if not np.all(np.isfinite(arr)):
            raise ValueError("feature values must be finite")
        idx = np.nonzero(arr)[0].astype(np.int32)
        return cls(idx, arr[idx], arr.shape[0])

    def value_at(self, f):
        """Value of feature f (0.0 when absent)."""
        pos = np.searchsorted(self.indices, f)
        if pos < self.indices.shape[0] and self.indices[pos] == f:
            return float(self.values[pos])
        return 0.0

    def to_dense(self):
        out = np.zeros(self.dim, dtype=np.float64)
        out[self.indices] = self.values
        return out

    @property
    def nnz(self):
        return int(self.indices.shape[0])


@dataclass
class Dataset:
    """Labeled rows sharing one dimension; labels are 0/1 (1 = positive)."""

    indices: np.ndarray
    indptr: np.ndarray
    values: np.ndarray
    y: np.ndarray
    dim: int
    feature_names: list[str] | None = None
    _dense: np.ndarray | None = field(default=None, repr=False)

    @classmethod
    def from_vectors(cls, vectors, labels, feature_names=None):
        if not vectors:
            raise ValueError("empty dataset")
        dim = vectors[0].dim
        if any(v.dim != dim for v in vectors):
            raise ValueError("inconsistent dimensions")
        indptr = np.zeros(len(vectors) + 1, dtype=np.int64)
        for i, v in enumerate(vectors):
            indptr[i + 1] = indptr[i] + v.nnz
        indices = np.concatenate([v.indices for v in vectors]) if vectors else np.empty(0, np.int32)
        values = np.concatenate([v.values for v in vectors]) if vectors else np.empty(0, np.float64)
        return cls(indices.astype(np.int32), indptr, values.astype(np.float64),
                   _as_labels(labels, len(vectors)), dim, feature_names)

    @classmethod
    def from_dense(cls, X, labels, feature_names=None):
        X = np.ascontiguousarray(np.asarray(X, dtype=np.float64))
        if X.ndim != 2 or X.shape[0] == 0:
            raise ValueError("expected a nonempty 2-D matrix")
        if not np.all(np.isfinite(X)):
            raise ValueError("feature values must be finite")
        n, d = X.shape
        mask = X != 0.0
        counts = mask.sum(axis=1)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        rows, cols = np.nonzero(mask)
        ds = cls(cols.astype(np.int32), indptr, X[rows, cols].astype(np.float64),
                 _as_labels(labels, n), d, feature_names)
        ds._dense = X
        return ds

    @property
    def n_rows(self):
        return int(self.indptr.shape[0] - 1)

    @property
    def is_binary(self):
        """True when every stored value is exactly 1 (presence data)."""
        return bool(np.all(self.values == 1.0))

    def row(self, i):
        lo, hi = self.indptr[i], self.indptr[i + 1]
        return FeatureVector(self.indices[lo:hi], self.values[lo:hi], self.dim)

    def to_dense(self):
        if self._dense is None:
            X = np.zeros((self.n_rows, self.dim), dtype=np.float64)
            for i in range(self.n_rows):
                lo, hi = self.indptr[i], self.indptr[i + 1]
                X[i, self.indices[lo:hi]] = self.values[lo:hi]
            self._dense = X
        return self._dense

    def subset(self, row_ids):
        row_ids = np.asarray(row_ids, dtype=np.int64)
        lengths = self.indptr[row_ids + 1] - self.indptr[row_ids]
        indptr = np.zeros(row_ids.shape[0] + 1, dtype=np.int64)
        np.cumsum(lengths, out=indptr[1:])
        if row_ids.shape[0]:
            indices = np.concatenate(
                [self.indices[self.indptr[r]:self.indptr[r + 1]] for r in row_ids])
            values = np.concatenate(
                [self.values[self.indptr[r]:self.indptr[r + 1]] for r in row_ids])
        else:
            indices = np.empty(0, np.int32)
            values = np.empty(0, np.float64)
        ds = Dataset(indices, indptr, values, self.y[row_ids], self.dim, self.feature_names)
        if self._dense is not None:
            ds._dense = np.ascontiguousarray(self._dense[row_ids])
        return ds

    def binarized(self):
        """Presence-only view: every stored nonzero becomes 1.0."""
        keep = self.values != 0.0
        if np.all(keep):
            return Dataset(self.indices, self.indptr, np.ones_like(self.values),
                           self.y, self.dim, self.feature_names)
        lengths = np.diff(self.indptr)
        row_of = np.repeat(np.arange(self.n_rows), lengths)[keep]
        counts = np.bincount(row_of, minlength=self.n_rows)
        indptr = np.zeros(self.n_rows + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        return Dataset(self.indices[keep], indptr,
                       np.ones(int(keep.sum()), dtype=np.float64),
                       self.y, self.dim, self.feature_names)

    def class_counts(self):
        pos = int(self.y.sum())
        return self.n_rows - pos, pos


def _as_labels(labels, n):
    y = np.asarray(labels, dtype=np.int8)
    if y.shape != (n,):
        raise ValueError("labels must be one per row")
    if not np.all((y == 0) | (y == 1)):
        raise ValueError("labels must be 0 or 1")
    return y
