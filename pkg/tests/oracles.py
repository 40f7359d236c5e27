"""Independent brute-force oracles the implementation is checked against."""

from fractions import Fraction


def oracle_tree(X, y, max_depth, min_samples_leaf):
    """Exhaustive CART: enumerate every (feature, threshold) split, score with
    exact rational Gini, recurse.  Ties by lower feature then lower threshold;
    splits must strictly reduce impurity.  Returns a nested dict."""
    n = len(X)
    d = len(X[0])

    def weighted_impurity(groups):
        total = Fraction(0)
        for rows in groups:
            m = len(rows)
            p = sum(y[r] for r in rows)
            total += Fraction(p * (m - p), m)
        return total

    def build(rows, depth):
        m = len(rows)
        p = sum(y[r] for r in rows)
        node = {"n": m, "p": Fraction(p, m)}
        if depth >= max_depth or p == 0 or p == m or m < 2 * min_samples_leaf:
            return node
        best = None
        for f in range(d):
            values = sorted(set(X[r][f] for r in rows))
            for lo, hi in zip(values, values[1:]):
                thr = (lo + hi) * 0.5
                if thr >= hi:
                    thr = lo
                left = [r for r in rows if X[r][f] <= thr]
                right = [r for r in rows if X[r][f] > thr]
                if len(left) < min_samples_leaf or len(right) < min_samples_leaf:
                    continue
                key = (weighted_impurity([left, right]), f, thr)
                if best is None or key < best[0]:
                    best = (key, left, right)
        if best is None:
            return node
        (impurity, f, thr), left, right = best
        if not impurity < Fraction(p * (m - p), m):
            return node
        node["feature"] = f
        node["threshold"] = thr
        node["left"] = build(left, depth + 1)
        node["right"] = build(right, depth + 1)
        return node

    return build(list(range(n)), 0)


def same_tree(oracle_node, model, nid=0):
    """Structural equality of the oracle tree and a TreeModel subtree."""
    is_leaf = model.feature[nid] < 0
    if "feature" not in oracle_node:
        return is_leaf and float(oracle_node["p"]) == model.p_pos[nid] \
            and oracle_node["n"] == model.n_node[nid]
    if is_leaf:
        return False
    if oracle_node["feature"] != model.feature[nid]:
        return False
    if oracle_node["threshold"] != model.threshold[nid]:
        return False
    return (same_tree(oracle_node["left"], model, int(model.left[nid]))
            and same_tree(oracle_node["right"], model, int(model.right[nid])))


def oracle_confusion(pred_labels, truths, positive):
    """Direct quadruple counting over covered (label is not None) pairs."""
    counts = {"tp": 0, "fp": 0, "tn": 0, "fn": 0}
    for label, truth in zip(pred_labels, truths):
        if label is None:
            continue
        if label == positive:
            counts["tp" if truth == positive else "fp"] += 1
        else:
            counts["fn" if truth == positive else "tn"] += 1
    return counts
