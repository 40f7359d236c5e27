# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernel backend.

Mirrors ``_pykernels`` operation for operation; the build disables FMA
contraction so float results are bit-identical to the pure-Python twin.
"""

from libc.math cimport exp, sqrt
from libc.stdlib cimport free, malloc, qsort

import numpy as np

backend_name = "c"

cdef extern from *:
    ctypedef long long int128 "__int128"


# ---------------------------------------------------------------------------
# splitmix64 (matches _prng.splitmix64_next)
# ---------------------------------------------------------------------------

cdef inline unsigned long long _splitmix_next(unsigned long long *state) noexcept nogil:
    cdef unsigned long long z
    state[0] = state[0] + <unsigned long long>0x9E3779B97F4A7C15
    z = state[0]
    z = (z ^ (z >> 30)) * <unsigned long long>0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * <unsigned long long>0x94D049BB133111EB
    z = z ^ (z >> 31)
    return z


# ---------------------------------------------------------------------------
# linear model SGD
# ---------------------------------------------------------------------------

def train_logistic(indices, indptr, values, y01, order, dim, lr0, l2):
    cdef const int[:] ind = np.ascontiguousarray(indices, dtype=np.int32)
    cdef const long long[:] ptr = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef const double[:] val = np.ascontiguousarray(values, dtype=np.float64)
    cdef const double[:] yy = np.ascontiguousarray(y01, dtype=np.float64)
    cdef const long long[:] steps = np.ascontiguousarray(order, dtype=np.int64)
    cdef long long d = dim
    cdef double c_lr0 = lr0, c_l2 = l2

    w_arr = np.zeros(d, dtype=np.float64)
    cdef double[:] v = w_arr
    cdef double s = 1.0, b = 0.0
    cdef double lr, z, p, ez, c
    cdef long long t = 0, i, r, j, lo, hi, k
    cdef long long n_steps = steps.shape[0]

    with nogil:
        for i in range(n_steps):
            r = steps[i]
            t += 1
            lr = c_lr0 / sqrt(<double>t)
            lo = ptr[r]
            hi = ptr[r + 1]
            z = 0.0
            for j in range(lo, hi):
                z += v[ind[j]] * val[j]
            z = z * s + b
            if z >= 0.0:
                p = 1.0 / (1.0 + exp(-z))
            else:
                ez = exp(z)
                p = ez / (1.0 + ez)
            c = lr * (p - yy[r])
            s = s * (1.0 - lr * c_l2)
            for j in range(lo, hi):
                v[ind[j]] -= c * val[j] / s
            b -= c
            if s < 1e-100:
                for k in range(d):
                    v[k] *= s
                s = 1.0
        for k in range(d):
            v[k] *= s
    return w_arr, b


def train_pegasos(indices, indptr, values, ypm, order, dim, lam):
    cdef const int[:] ind = np.ascontiguousarray(indices, dtype=np.int32)
    cdef const long long[:] ptr = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef const double[:] val = np.ascontiguousarray(values, dtype=np.float64)
    cdef const double[:] yy = np.ascontiguousarray(ypm, dtype=np.float64)
    cdef const long long[:] steps = np.ascontiguousarray(order, dtype=np.int64)
    cdef long long d = dim
    cdef double c_lam = lam

    w_arr = np.zeros(d, dtype=np.float64)
    cdef double[:] v = w_arr
    cdef double s = 1.0, b = 0.0
    cdef double lr, z, c
    cdef bint violated
    cdef long long t = 0, i, r, j, lo, hi, k
    cdef long long n_steps = steps.shape[0]

    with nogil:
        for i in range(n_steps):
            r = steps[i]
            t += 1
            lr = 1.0 / (c_lam * t)
            lo = ptr[r]
            hi = ptr[r + 1]
            z = 0.0
            for j in range(lo, hi):
                z += v[ind[j]] * val[j]
            z = z * s + b
            violated = yy[r] * z < 1.0
            s = s * (1.0 - lr * c_lam)
            if s < 1e-100:
                for k in range(d):
                    v[k] *= s
                s = 1.0
            if violated:
                c = lr * yy[r]
                for j in range(lo, hi):
                    v[ind[j]] += c * val[j] / s
                b += c
        for k in range(d):
            v[k] *= s
    return w_arr, b


def train_winnow(indices, indptr, y01, order, dim, alpha, beta, theta):
    cdef const int[:] ind = np.ascontiguousarray(indices, dtype=np.int32)
    cdef const long long[:] ptr = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef const signed char[:] yy = np.ascontiguousarray(y01, dtype=np.int8)
    cdef const long long[:] steps = np.ascontiguousarray(order, dtype=np.int64)
    cdef long long d = dim
    cdef double c_alpha = alpha, c_beta = beta, c_theta = theta

    u_arr = np.ones(d, dtype=np.float64)
    v_arr = np.ones(d, dtype=np.float64)
    cdef double[:] u = u_arr
    cdef double[:] v = v_arr
    cdef double score
    cdef long long i, r, j, lo, hi, f
    cdef int yhat, label
    cdef long long n_steps = steps.shape[0]

    with nogil:
        for i in range(n_steps):
            r = steps[i]
            lo = ptr[r]
            hi = ptr[r + 1]
            score = 0.0
            for j in range(lo, hi):
                f = ind[j]
                score += u[f] - v[f]
            yhat = 1 if score >= c_theta else 0
            label = yy[r]
            if yhat != label:
                if label == 1:
                    for j in range(lo, hi):
                        f = ind[j]
                        u[f] *= c_alpha
                        v[f] *= c_beta
                else:
                    for j in range(lo, hi):
                        f = ind[j]
                        u[f] *= c_beta
                        v[f] *= c_alpha
    return u_arr, v_arr


# ---------------------------------------------------------------------------
# CART tree building
# ---------------------------------------------------------------------------

MAX_TREE_SAMPLES = 1 << 20

cdef struct ValLab:
    double v
    long long lab

cdef int _vallab_cmp(const void *a, const void *b) noexcept nogil:
    cdef double av = (<const ValLab*>a).v
    cdef double bv = (<const ValLab*>b).v
    if av < bv:
        return -1
    if av > bv:
        return 1
    return 0

cdef int _int64_cmp(const void *a, const void *b) noexcept nogil:
    cdef long long av = (<const long long*>a)[0]
    cdef long long bv = (<const long long*>b)[0]
    if av < bv:
        return -1
    if av > bv:
        return 1
    return 0


cdef struct Best:
    bint has
    double score
    long long num
    long long den
    long long feat
    double thr


cdef inline void _consider(Best *best, long long num, long long den,
                           long long feat, double thr) noexcept nogil:
    # candidates arrive in ascending (feature, threshold) order; the total
    # order is (float score, exact rational, feature, threshold)
    cdef double score = (<double>num) / (<double>den)
    if not best.has or score < best.score:
        best.has = True
        best.score = score
        best.num = num
        best.den = den
        best.feat = feat
        best.thr = thr
    elif score == best.score:
        if <int128>num * best.den < <int128>best.num * den:
            best.num = num
            best.den = den
            best.feat = feat
            best.thr = thr


cdef class _TreeBuilder:
    cdef list feature, threshold, left, right, p_pos, n_node

    def __cinit__(self):
        self.feature = []
        self.threshold = []
        self.left = []
        self.right = []
        self.p_pos = []
        self.n_node = []

    cdef long long add_node(self):
        self.feature.append(-1)
        self.threshold.append(0.0)
        self.left.append(-1)
        self.right.append(-1)
        self.p_pos.append(0.0)
        self.n_node.append(0)
        return len(self.feature) - 1

    cdef arrays(self):
        return (
            np.array(self.feature, dtype=np.int32),
            np.array(self.threshold, dtype=np.float64),
            np.array(self.left, dtype=np.int32),
            np.array(self.right, dtype=np.int32),
            np.array(self.p_pos, dtype=np.float64),
            np.array(self.n_node, dtype=np.int32),
        )


cdef long long _sample_candidates(long long[:] perm, unsigned long long *state,
                                  long long k, long long d,
                                  long long[:] out) noexcept nogil:
    cdef long long j, r
    cdef long long tmp
    for j in range(k):
        r = j + <long long>(_splitmix_next(state) % <unsigned long long>(d - j))
        tmp = perm[j]
        perm[j] = perm[r]
        perm[r] = tmp
        out[j] = perm[j]
    qsort(&out[0], <size_t>k, sizeof(long long), _int64_cmp)
    return k


def build_tree_dense(X, y, sample_idx, max_depth, min_samples_leaf,
                     features_per_split, seed):
    Xc = np.ascontiguousarray(X, dtype=np.float64)
    cdef const double[:, :] Xv = Xc
    cdef const signed char[:] yv = np.ascontiguousarray(y, dtype=np.int8)
    root_rows = np.ascontiguousarray(sample_idx, dtype=np.int64)
    if root_rows.shape[0] > MAX_TREE_SAMPLES:
        raise ValueError("too many samples for exact split arithmetic")

    cdef long long n = Xv.shape[0], d = Xv.shape[1]
    cdef long long c_depth = max_depth, c_leaf = min_samples_leaf
    cdef long long k = features_per_split
    cdef bint sampling = 0 < k < d
    cdef unsigned long long state = <unsigned long long>seed

    perm_arr = np.arange(d, dtype=np.int64)
    cand_arr = np.empty(d, dtype=np.int64)
    cdef long long[:] perm = perm_arr
    cdef long long[:] cand = cand_arr
    scratch = <ValLab*>malloc(<size_t>root_rows.shape[0] * sizeof(ValLab))
    if scratch == NULL:
        raise MemoryError()

    cdef _TreeBuilder acc = _TreeBuilder()
    cdef long long nid, depth, N, P, i, f, ci, n_cand
    cdef long long n_l, p_l, n_r, p_r, prefix
    cdef double lo_v, hi_v, thr
    cdef Best best
    cdef const long long[:] rows
    cdef long long root = acc.add_node()

    stack = [(root, root_rows, 0)]
    try:
        while stack:
            nid_py, rows_arr, depth_py = stack.pop()
            nid = nid_py
            depth = depth_py
            rows = rows_arr
            N = rows.shape[0]
            P = 0
            for i in range(N):
                P += yv[rows[i]]
            acc.p_pos[nid] = (<double>P) / (<double>N)
            acc.n_node[nid] = N
            if depth >= c_depth or P == 0 or P == N or N < 2 * c_leaf:
                continue

            if sampling:
                n_cand = _sample_candidates(perm, &state, k, d, cand)
            else:
                n_cand = d
                for i in range(d):
                    cand[i] = i

            best.has = False
            with nogil:
                for ci in range(n_cand):
                    f = cand[ci]
                    for i in range(N):
                        scratch[i].v = Xv[rows[i], f]
                        scratch[i].lab = yv[rows[i]]
                    qsort(scratch, <size_t>N, sizeof(ValLab), _vallab_cmp)
                    prefix = 0
                    for i in range(1, N):
                        prefix += scratch[i - 1].lab
                        if scratch[i].v > scratch[i - 1].v:
                            n_l = i
                            p_l = prefix
                            n_r = N - n_l
                            p_r = P - p_l
                            if n_l < c_leaf or n_r < c_leaf:
                                continue
                            lo_v = scratch[i - 1].v
                            hi_v = scratch[i].v
                            thr = (lo_v + hi_v) * 0.5
                            if thr >= hi_v:
                                thr = lo_v
                            _consider(&best,
                                      p_l * (n_l - p_l) * n_r + p_r * (n_r - p_r) * n_l,
                                      n_l * n_r, f, thr)

            if not best.has:
                continue
            if not (<int128>P * (N - P) * best.den > <int128>best.num * N):
                continue
            _split_dense(acc, stack, Xv, rows_arr, nid, best.feat, best.thr, depth)
    finally:
        free(scratch)
    return acc.arrays()


cdef _split_dense(_TreeBuilder acc, list stack, const double[:, :] Xv,
                  rows_arr, long long nid, long long f, double thr,
                  long long depth):
    cdef const long long[:] rows = rows_arr
    cdef long long N = rows.shape[0]
    cdef long long i, n_left = 0
    left_arr = np.empty(N, dtype=np.int64)
    right_arr = np.empty(N, dtype=np.int64)
    cdef long long[:] lv = left_arr
    cdef long long[:] rv = right_arr
    cdef long long n_right = 0
    for i in range(N):
        if Xv[rows[i], f] <= thr:
            lv[n_left] = rows[i]
            n_left += 1
        else:
            rv[n_right] = rows[i]
            n_right += 1
    acc.feature[nid] = f
    acc.threshold[nid] = thr
    cdef long long left_id = acc.add_node()
    cdef long long right_id = acc.add_node()
    acc.left[nid] = left_id
    acc.right[nid] = right_id
    stack.append((right_id, right_arr[:n_right].copy(), depth + 1))
    stack.append((left_id, left_arr[:n_left].copy(), depth + 1))


def build_tree_sparse(indices, indptr, y, sample_idx, dim,
                      max_depth, min_samples_leaf, features_per_split, seed):
    cdef const int[:] ind = np.ascontiguousarray(indices, dtype=np.int32)
    cdef const long long[:] ptr = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef const signed char[:] yv = np.ascontiguousarray(y, dtype=np.int8)
    root_rows = np.ascontiguousarray(sample_idx, dtype=np.int64)
    if root_rows.shape[0] > MAX_TREE_SAMPLES:
        raise ValueError("too many samples for exact split arithmetic")

    cdef long long d = dim
    cdef long long c_depth = max_depth, c_leaf = min_samples_leaf
    cdef long long k = features_per_split
    cdef bint sampling = 0 < k < d
    cdef unsigned long long state = <unsigned long long>seed

    perm_arr = np.arange(d, dtype=np.int64)
    cand_arr = np.empty(d, dtype=np.int64)
    cnt_arr = np.zeros(d, dtype=np.int64)
    pos_arr = np.zeros(d, dtype=np.int64)
    touched_arr = np.empty(d, dtype=np.int64)
    cdef long long[:] perm = perm_arr
    cdef long long[:] cand = cand_arr
    cdef long long[:] cnt = cnt_arr
    cdef long long[:] pos = pos_arr
    cdef long long[:] touched = touched_arr

    cdef _TreeBuilder acc = _TreeBuilder()
    cdef long long nid, depth, N, P, i, j, r, f, ci, n_cand, n_touched, m1
    cdef long long n_l, p_l
    cdef Best best
    cdef const long long[:] rows
    cdef long long root = acc.add_node()

    stack = [(root, root_rows, 0)]
    while stack:
        nid_py, rows_arr, depth_py = stack.pop()
        nid = nid_py
        depth = depth_py
        rows = rows_arr
        N = rows.shape[0]
        P = 0
        for i in range(N):
            P += yv[rows[i]]
        acc.p_pos[nid] = (<double>P) / (<double>N)
        acc.n_node[nid] = N
        if depth >= c_depth or P == 0 or P == N or N < 2 * c_leaf:
            continue

        n_touched = 0
        with nogil:
            for i in range(N):
                r = rows[i]
                for j in range(ptr[r], ptr[r + 1]):
                    f = ind[j]
                    if cnt[f] == 0:
                        touched[n_touched] = f
                        n_touched += 1
                    cnt[f] += 1
                    pos[f] += yv[r]

        if sampling:
            n_cand = _sample_candidates(perm, &state, k, d, cand)
        else:
            n_cand = 0
            # ascending feature order; only touched features can split
            for f in range(d):
                if cnt[f] != 0:
                    cand[n_cand] = f
                    n_cand += 1

        best.has = False
        with nogil:
            for ci in range(n_cand):
                f = cand[ci]
                m1 = cnt[f]
                if m1 == 0 or m1 == N:
                    continue
                n_l = N - m1
                p_l = P - pos[f]
                if n_l < c_leaf or m1 < c_leaf:
                    continue
                _consider(&best,
                          p_l * (n_l - p_l) * m1 + pos[f] * (m1 - pos[f]) * n_l,
                          n_l * m1, f, 0.5)
            for i in range(n_touched):
                f = touched[i]
                cnt[f] = 0
                pos[f] = 0

        if not best.has:
            continue
        if not (<int128>P * (N - P) * best.den > <int128>best.num * N):
            continue
        _split_sparse(acc, stack, ind, ptr, rows_arr, nid, best.feat, depth)

    return acc.arrays()


cdef _split_sparse(_TreeBuilder acc, list stack, const int[:] ind,
                   const long long[:] ptr, rows_arr, long long nid,
                   long long f, long long depth):
    cdef const long long[:] rows = rows_arr
    cdef long long N = rows.shape[0]
    cdef long long i, r, lo, hi, mid
    cdef bint present
    left_arr = np.empty(N, dtype=np.int64)
    right_arr = np.empty(N, dtype=np.int64)
    cdef long long[:] lv = left_arr
    cdef long long[:] rv = right_arr
    cdef long long n_left = 0, n_right = 0
    for i in range(N):
        r = rows[i]
        lo = ptr[r]
        hi = ptr[r + 1]
        present = False
        while lo < hi:
            mid = (lo + hi) // 2
            if ind[mid] == f:
                present = True
                break
            elif ind[mid] < f:
                lo = mid + 1
            else:
                hi = mid
        if present:
            rv[n_right] = rows[i]
            n_right += 1
        else:
            lv[n_left] = rows[i]
            n_left += 1
    acc.feature[nid] = f
    acc.threshold[nid] = 0.5
    cdef long long left_id = acc.add_node()
    cdef long long right_id = acc.add_node()
    acc.left[nid] = left_id
    acc.right[nid] = right_id
    stack.append((right_id, right_arr[:n_right].copy(), depth + 1))
    stack.append((left_id, left_arr[:n_left].copy(), depth + 1))
