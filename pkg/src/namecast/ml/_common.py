import math

import numpy as np

from ..errors import TrainingError


def sigmoid(z):
    if z >= 0.0:
        return 1.0 / (1.0 + math.exp(-z))
    ez = math.exp(z)
    return ez / (1.0 + ez)


def sparse_dot(weights, x):
    """Sequential sparse dot product (fixed accumulation order)."""
    acc = 0.0
    idx = x.indices
    vals = x.values
    for j in range(idx.shape[0]):
        acc += weights[idx[j]] * vals[j]
    return acc


def shuffled_order(n, epochs, seed):
    """Row visit order for SGD: one seeded permutation per epoch."""
    rng = np.random.Generator(np.random.PCG64(seed))
    if epochs == 0 or n == 0:
        return np.empty(0, dtype=np.int64)
    return np.concatenate([rng.permutation(n) for _ in range(epochs)]).astype(np.int64)


def require_both_labels(data):
    neg, pos = data.class_counts()
    if neg == 0 or pos == 0:
        raise TrainingError("training data must contain both labels")
