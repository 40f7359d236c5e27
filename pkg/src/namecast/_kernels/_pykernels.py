"""Pure-Python kernel backend.

This module is the reference semantics for the compiled backend in
``_ckernels.pyx``: both implement the same arithmetic in the same order, so
models trained through either backend are bit-identical (with FMA contraction
disabled in the C build).  Conventions shared by both:

* Sparse data is CSR: ``indices`` (int32, sorted within each row), ``indptr``
  (int64, length n_rows+1), ``values`` (float64).
* SGD kernels consume a precomputed visit ``order`` (int64 row ids, one entry
  per update step) so that all shuffling lives in the caller's RNG.
* Tree split selection orders candidates by the tuple (float impurity score,
  exact rational impurity, feature index, threshold); the rational comparison
  removes any dependence on float rounding of the score.
"""

from __future__ import annotations

import math

import numpy as np

from ._prng import splitmix64_next

backend_name = "python"

# Sample counts beyond this could overflow the int64 split arithmetic.
MAX_TREE_SAMPLES = 1 << 20


# ---------------------------------------------------------------------------
# linear model SGD
# ---------------------------------------------------------------------------

def train_logistic(indices, indptr, values, y01, order, dim, lr0, l2):
    """SGD on L2-regularized logistic loss; returns (weights, bias).

    Learning rate decays as lr0/sqrt(t) with t the 1-based global step.  The
    weight vector is kept as scale * direction so the L2 decay is O(nnz) per
    step.
    """
    ind = indices.tolist()
    ptr = indptr.tolist()
    val = values.tolist()
    yy = y01.tolist()
    steps = order.tolist()

    v = [0.0] * dim
    s = 1.0
    b = 0.0
    t = 0
    for r in steps:
        t += 1
        lr = lr0 / math.sqrt(t)
        lo = ptr[r]
        hi = ptr[r + 1]
        z = 0.0
        for j in range(lo, hi):
            z += v[ind[j]] * val[j]
        z = z * s + b
        if z >= 0.0:
            p = 1.0 / (1.0 + math.exp(-z))
        else:
            ez = math.exp(z)
            p = ez / (1.0 + ez)
        c = lr * (p - yy[r])
        s = s * (1.0 - lr * l2)
        for j in range(lo, hi):
            v[ind[j]] -= c * val[j] / s
        b -= c
        if s < 1e-100:
            for k in range(dim):
                v[k] *= s
            s = 1.0

    w = np.array(v, dtype=np.float64)
    w *= s
    return w, b


def train_pegasos(indices, indptr, values, ypm, order, dim, lam):
    """Pegasos hinge-loss SGD; labels in {-1,+1}; returns (weights, bias).

    Step size 1/(lam*t); the bias is updated on margin violations and is not
    regularized.
    """
    ind = indices.tolist()
    ptr = indptr.tolist()
    val = values.tolist()
    yy = ypm.tolist()
    steps = order.tolist()

    v = [0.0] * dim
    s = 1.0
    b = 0.0
    t = 0
    for r in steps:
        t += 1
        lr = 1.0 / (lam * t)
        lo = ptr[r]
        hi = ptr[r + 1]
        z = 0.0
        for j in range(lo, hi):
            z += v[ind[j]] * val[j]
        z = z * s + b
        violated = yy[r] * z < 1.0
        s = s * (1.0 - lr * lam)
        if s < 1e-100:
            # t == 1 lands here exactly (decay factor 0): fold scale into v.
            for k in range(dim):
                v[k] *= s
            s = 1.0
        if violated:
            c = lr * yy[r]
            for j in range(lo, hi):
                v[ind[j]] += c * val[j] / s
            b += c

    w = np.array(v, dtype=np.float64)
    w *= s
    return w, b


def train_winnow(indices, indptr, y01, order, dim, alpha, beta, theta):
    """Balanced winnow on binary features; returns (u, v) weight vectors.

    Mistake-driven: promote/demote the active entries of u and v
    multiplicatively when sign((u-v).x >= theta) disagrees with the label.
    """
    ind = indices.tolist()
    ptr = indptr.tolist()
    yy = y01.tolist()
    steps = order.tolist()

    u = [1.0] * dim
    v = [1.0] * dim
    for r in steps:
        lo = ptr[r]
        hi = ptr[r + 1]
        score = 0.0
        for j in range(lo, hi):
            f = ind[j]
            score += u[f] - v[f]
        yhat = 1 if score >= theta else 0
        label = yy[r]
        if yhat != label:
            if label == 1:
                for j in range(lo, hi):
                    f = ind[j]
                    u[f] *= alpha
                    v[f] *= beta
            else:
                for j in range(lo, hi):
                    f = ind[j]
                    u[f] *= beta
                    v[f] *= alpha
    return np.array(u, dtype=np.float64), np.array(v, dtype=np.float64)


# ---------------------------------------------------------------------------
# CART tree building
# ---------------------------------------------------------------------------

class _TreeAccum:
    """Growable parallel arrays for tree nodes."""

    def __init__(self):
        self.feature = []
        self.threshold = []
        self.left = []
        self.right = []
        self.p_pos = []
        self.n_node = []

    def add_node(self):
        self.feature.append(-1)
        self.threshold.append(0.0)
        self.left.append(-1)
        self.right.append(-1)
        self.p_pos.append(0.0)
        self.n_node.append(0)
        return len(self.feature) - 1

    def arrays(self):
        return (
            np.array(self.feature, dtype=np.int32),
            np.array(self.threshold, dtype=np.float64),
            np.array(self.left, dtype=np.int32),
            np.array(self.right, dtype=np.int32),
            np.array(self.p_pos, dtype=np.float64),
            np.array(self.n_node, dtype=np.int32),
        )


def _exact_less(num_a, den_a, num_b, den_b):
    """a/b < c/d by integer cross-multiplication (Python ints: no overflow)."""
    return num_a * den_b < num_b * den_a


def _pick_exact(nums, dens, feats, thrs):
    """Among float-score ties, return position of the exact rational minimum,
    breaking remaining ties by (feature, threshold)."""
    best = 0
    for i in range(1, len(nums)):
        if _exact_less(nums[i], dens[i], nums[best], dens[best]):
            best = i
        elif not _exact_less(nums[best], dens[best], nums[i], dens[i]):
            # exact tie: lower feature, then lower threshold
            if (feats[i], thrs[i]) < (feats[best], thrs[best]):
                best = i
    return best


def _sample_features(perm, state, k, d):
    """Partial Fisher-Yates over the persistent permutation; returns sorted
    candidate array and the advanced PRNG state."""
    for j in range(k):
        state, z = splitmix64_next(state)
        r = j + (z % (d - j))
        perm[j], perm[r] = perm[r], perm[j]
    cand = np.sort(np.array(perm[:k], dtype=np.int64))
    return cand, state


def _select_best(n_l, p_l, N, P, feats, thrs, min_leaf):
    """Vectorized candidate selection for one node.

    n_l/p_l: int64 arrays of left-child sample/positive counts per candidate.
    Returns (num, den, feature, threshold) of the winner or None.
    """
    n_r = N - n_l
    p_r = P - p_l
    valid = (n_l >= min_leaf) & (n_r >= min_leaf)
    if not valid.any():
        return None
    n_l, p_l, n_r, p_r = n_l[valid], p_l[valid], n_r[valid], p_r[valid]
    feats = feats[valid]
    thrs = thrs[valid]
    num = p_l * (n_l - p_l) * n_r + p_r * (n_r - p_r) * n_l
    den = n_l * n_r
    score = num / den
    m = score.min()
    tie = np.nonzero(score == m)[0]
    if tie.shape[0] == 1:
        i = tie[0]
    else:
        i = tie[
            _pick_exact(
                [int(num[j]) for j in tie],
                [int(den[j]) for j in tie],
                [int(feats[j]) for j in tie],
                [float(thrs[j]) for j in tie],
            )
        ]
    return int(num[i]), int(den[i]), int(feats[i]), float(thrs[i])


def _positive_gain(num, den, N, P):
    """Strictly positive Gini gain: P(N-P)/N > num/den, exact integers."""
    return P * (N - P) * den > num * N


def build_tree_dense(X, y, sample_idx, max_depth, min_samples_leaf, features_per_split, seed):
    """CART on a dense float64 matrix.  Thresholds at midpoints of consecutive
    distinct sorted values within the node; split quality by Gini impurity.

    Returns (feature, threshold, left, right, p_pos, n_node) arrays; leaves
    have feature == -1.
    """
    n, d = X.shape
    if sample_idx.shape[0] > MAX_TREE_SAMPLES:
        raise ValueError("too many samples for exact split arithmetic")
    acc = _TreeAccum()
    y64 = y.astype(np.int64)
    sampling = 0 < features_per_split < d
    perm = list(range(d))
    state = seed

    root = acc.add_node()
    stack = [(root, sample_idx.astype(np.int64), 0)]
    while stack:
        nid, rows, depth = stack.pop()
        N = rows.shape[0]
        P = int(y64[rows].sum())
        acc.p_pos[nid] = P / N
        acc.n_node[nid] = N
        if depth >= max_depth or P == 0 or P == N or N < 2 * min_samples_leaf:
            continue
        if sampling:
            cand, state = _sample_features(perm, state, features_per_split, d)
        else:
            cand = np.arange(d, dtype=np.int64)

        ylocal = y64[rows]
        best = None
        for f in cand:
            col = X[rows, f]
            order = np.argsort(col, kind="stable")
            sv = col[order]
            boundary = np.nonzero(sv[1:] > sv[:-1])[0] + 1
            if boundary.shape[0] == 0:
                continue
            pp = np.cumsum(ylocal[order], dtype=np.int64)
            lo = sv[boundary - 1]
            hi = sv[boundary]
            thr = (lo + hi) * 0.5
            # guard against midpoints rounding up onto the higher value
            thr = np.where(thr >= hi, lo, thr)
            pick = _select_best(
                boundary.astype(np.int64),
                pp[boundary - 1],
                N,
                P,
                np.full(boundary.shape[0], int(f), dtype=np.int64),
                thr,
                min_samples_leaf,
            )
            if pick is None:
                continue
            if best is None or _candidate_less(pick, best):
                best = pick

        if best is None or not _positive_gain(best[0], best[1], N, P):
            continue
        _, _, f, thr = best
        acc.feature[nid] = f
        acc.threshold[nid] = thr
        mask = X[rows, f] <= thr
        _attach_children(acc, stack, nid, rows, mask, depth)

    return acc.arrays()


def _candidate_less(a, b):
    """Ordering on (num, den, feature, threshold) picks: float score first,
    exact rational on float ties, then (feature, threshold)."""
    sa = a[0] / a[1]
    sb = b[0] / b[1]
    if sa != sb:
        return sa < sb
    if _exact_less(a[0], a[1], b[0], b[1]):
        return True
    if _exact_less(b[0], b[1], a[0], a[1]):
        return False
    return (a[2], a[3]) < (b[2], b[3])


def _attach_children(acc, stack, nid, rows, left_mask, depth):
    left_rows = rows[left_mask]
    right_rows = rows[~left_mask]
    left_id = acc.add_node()
    right_id = acc.add_node()
    acc.left[nid] = left_id
    acc.right[nid] = right_id
    stack.append((right_id, right_rows, depth + 1))
    stack.append((left_id, left_rows, depth + 1))


def build_tree_sparse(indices, indptr, y, sample_idx, dim,
                      max_depth, min_samples_leaf, features_per_split, seed):
    """CART on sparse binary presence data (all stored values are 1); the only
    candidate threshold per feature is 0.5, with absent == 0 routed left."""
    if sample_idx.shape[0] > MAX_TREE_SAMPLES:
        raise ValueError("too many samples for exact split arithmetic")
    acc = _TreeAccum()
    y64 = y.astype(np.int64)
    d = dim
    sampling = 0 < features_per_split < d
    perm = list(range(d))
    state = seed

    root = acc.add_node()
    stack = [(root, sample_idx.astype(np.int64), 0)]
    while stack:
        nid, rows, depth = stack.pop()
        N = rows.shape[0]
        P = int(y64[rows].sum())
        acc.p_pos[nid] = P / N
        acc.n_node[nid] = N
        if depth >= max_depth or P == 0 or P == N or N < 2 * min_samples_leaf:
            continue

        lengths = (indptr[rows + 1] - indptr[rows]).astype(np.int64)
        idx_cat = np.concatenate(
            [indices[indptr[r]:indptr[r + 1]] for r in rows]
        ) if N else np.empty(0, dtype=indices.dtype)
        row_pos = np.repeat(np.arange(N, dtype=np.int64), lengths)
        n1 = np.bincount(idx_cat, minlength=d)
        y_rep = np.repeat(y64[rows], lengths)
        p1 = np.bincount(idx_cat[y_rep == 1], minlength=d)

        if sampling:
            cand, state = _sample_features(perm, state, features_per_split, d)
        else:
            cand = np.nonzero(n1)[0]
        m1 = n1[cand]
        usable = (m1 > 0) & (m1 < N)
        cand = cand[usable]
        if cand.shape[0] == 0:
            continue
        m1 = n1[cand]
        best = _select_best(
            N - m1,                      # left: feature absent
            P - p1[cand],
            N,
            P,
            cand.astype(np.int64),
            np.full(cand.shape[0], 0.5, dtype=np.float64),
            min_samples_leaf,
        )
        if best is None or not _positive_gain(best[0], best[1], N, P):
            continue
        f = best[2]
        present = np.zeros(N, dtype=bool)
        present[row_pos[idx_cat == f]] = True
        acc.feature[nid] = f
        acc.threshold[nid] = 0.5
        _attach_children(acc, stack, nid, rows, ~present, depth)

    return acc.arrays()
