import random

import numpy as np
import pytest

from namecast.metrics import (bootstrap_metric, kfold_indices, score,
                              stratified_split)
from namecast.records import FEMALE, MALE, GenderPrediction
from oracles import oracle_confusion


def _pred(label, covered=True):
    if not covered:
        return GenderPrediction.uncovered("SSA")
    return GenderPrediction("SSA", True, label, 1.0 if label == FEMALE else 0.0)


def test_split_exact_stratification():
    labels = [0] * 50 + [1] * 50
    train, test = stratified_split(labels, 0.2, seed=0)
    assert len(test) == 20 and len(train) == 80
    assert sum(labels[i] for i in test) == 10
    assert sorted(set(train) | set(test)) == list(range(100))
    assert not set(train) & set(test)


def test_split_deterministic():
    labels = [0, 1] * 30
    assert [a.tolist() for a in stratified_split(labels, 0.25, seed=7)] == \
        [a.tolist() for a in stratified_split(labels, 0.25, seed=7)]


def test_split_bad_fraction():
    with pytest.raises(ValueError):
        stratified_split([0, 1, 0, 1], 0.0, seed=0)
    with pytest.raises(ValueError):
        stratified_split([0, 1, 0, 1], 1.0, seed=0)


def test_split_single_row_class_rejected():
    with pytest.raises(ValueError):
        stratified_split([0, 0, 0, 1], 0.25, seed=0)


def test_kfold_partition():
    labels = [0, 1] * 5
    folds = kfold_indices(10, 5, labels, seed=0)
    assert [len(f) for f in folds] == [2] * 5
    union = sorted(int(i) for f in folds for i in f)
    assert union == list(range(10))
    # per-fold class counts within 1 of proportional
    for fold in folds:
        assert abs(sum(labels[i] for i in fold) - 1) <= 1


def test_kfold_deterministic_and_bounds():
    labels = [0, 1, 1, 0, 1, 0, 0, 1, 1, 0, 1, 0]
    f1 = kfold_indices(12, 3, labels, seed=3)
    f2 = kfold_indices(12, 3, labels, seed=3)
    assert all(np.array_equal(a, b) for a, b in zip(f1, f2))
    with pytest.raises(ValueError):
        kfold_indices(5, 1, [0, 1, 0, 1, 0], seed=0)
    with pytest.raises(ValueError):
        kfold_indices(5, 6, [0, 1, 0, 1, 0], seed=0)


def test_score_perfect():
    preds = [_pred(FEMALE), _pred(MALE), _pred(FEMALE)]
    truths = [FEMALE, MALE, FEMALE]
    rep = score(preds, truths)
    assert rep.accuracy == rep.precision == rep.recall == rep.f1 == 1.0
    assert rep.coverage == 1.0


def test_score_always_female():
    preds = [_pred(FEMALE)] * 10
    truths = [FEMALE] * 5 + [MALE] * 5
    rep = score(preds, truths)
    assert rep.precision == 0.5 and rep.recall == 1.0
    assert rep.accuracy == 0.5 and rep.f1 == pytest.approx(2 / 3)


def test_score_with_uncovered():
    preds = [_pred(FEMALE), _pred(FEMALE), _pred(MALE), _pred(None, covered=False)]
    truths = [FEMALE, MALE, MALE, FEMALE]
    rep = score(preds, truths)
    assert rep.coverage == 0.75
    assert (rep.tp, rep.fp, rep.tn, rep.fn) == (1, 1, 1, 0)
    assert rep.precision == 0.5 and rep.recall == 1.0
    assert rep.accuracy == pytest.approx(2 / 3) and rep.f1 == pytest.approx(2 / 3)


def test_score_zero_covered():
    preds = [_pred(None, covered=False)] * 3
    rep = score(preds, [FEMALE, MALE, FEMALE])
    assert rep.coverage == 0.0
    assert rep.accuracy is None and rep.precision is None
    assert rep.recall is None and rep.f1 is None


def test_score_identities_against_oracle():
    rng = random.Random(11)
    for _ in range(300):
        n = rng.randint(1, 40)
        preds, labels, truths = [], [], []
        for _ in range(n):
            truths.append(rng.choice([FEMALE, MALE]))
            if rng.random() < 0.2:
                preds.append(_pred(None, covered=False))
                labels.append(None)
            else:
                label = rng.choice([FEMALE, MALE])
                preds.append(_pred(label))
                labels.append(label)
        rep = score(preds, truths)
        counts = oracle_confusion(labels, truths, FEMALE)
        assert (rep.tp, rep.fp, rep.tn, rep.fn) == (
            counts["tp"], counts["fp"], counts["tn"], counts["fn"])
        assert rep.tp + rep.fp + rep.tn + rep.fn == rep.n_covered
        assert rep.n_covered <= rep.n_total
        assert rep.coverage == rep.n_covered / rep.n_total
        if rep.n_covered:
            assert abs(rep.accuracy - (rep.tp + rep.tn) / rep.n_covered) < 1e-12
        if rep.tp + rep.fp:
            assert abs(rep.precision - rep.tp / (rep.tp + rep.fp)) < 1e-12
        if rep.tp + rep.fn:
            assert abs(rep.recall - rep.tp / (rep.tp + rep.fn)) < 1e-12
        if rep.precision is not None and rep.recall is not None \
                and rep.precision + rep.recall > 0:
            expected = 2 * rep.precision * rep.recall / (rep.precision + rep.recall)
            assert abs(rep.f1 - expected) < 1e-12


def test_score_permutation_invariant():
    rng = random.Random(5)
    preds = [_pred(rng.choice([FEMALE, MALE])) for _ in range(30)]
    truths = [rng.choice([FEMALE, MALE]) for _ in range(30)]
    rep1 = score(preds, truths)
    order = list(range(30))
    rng.shuffle(order)
    rep2 = score([preds[i] for i in order], [truths[i] for i in order])
    assert rep1.as_dict() == rep2.as_dict()


def test_bootstrap_constant_and_deterministic():
    preds = [_pred(FEMALE)] * 20
    truths = [FEMALE] * 20
    ci = bootstrap_metric(preds, truths, "accuracy", b=200, seed=1)
    assert ci.point == ci.lower == ci.upper == 1.0
    ci2 = bootstrap_metric(preds, truths, "accuracy", b=200, seed=1)
    assert (ci.lower, ci.upper) == (ci2.lower, ci2.upper)


def test_bootstrap_order_and_validation():
    rng = random.Random(2)
    preds = [_pred(rng.choice([FEMALE, MALE])) for _ in range(40)]
    truths = [rng.choice([FEMALE, MALE]) for _ in range(40)]
    ci = bootstrap_metric(preds, truths, "accuracy", b=300, seed=9)
    assert ci.lower <= ci.upper
    with pytest.raises(ValueError):
        bootstrap_metric(preds, truths, "accuracy", b=50, seed=0)
    with pytest.raises(ValueError):
        bootstrap_metric([_pred(None, covered=False)] * 5, [FEMALE] * 5,
                         "accuracy", b=200, seed=0)
