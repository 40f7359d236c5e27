import math

import numpy as np
import pytest

from namecast.ensemble import (StackedConfig, StackedModel, fit_stacking_heads,
                               predict_ensemble, train_stacked)
from namecast.errors import TrainingError
from namecast.methods import LearnerSettings, train_method2, train_method3
from namecast.metrics import score
from namecast.ml import LinearModel, LogisticConfig, TreeConfig
from namecast.records import FEMALE, MALE, METHOD_ENSEMBLE, UserRecord
from namecast.ssa import NameStats

from test_methods import CONS_M, VOWEL_F, _users


def _sigmoid(z):
    return 1.0 / (1.0 + math.exp(-z))


def _corpus():
    # female names end in vowels, male names do not; both perfectly learnable
    return _users(VOWEL_F, FEMALE, "f") + _users(CONS_M, MALE, "m")


def _stats(cover_all=True):
    counts = {}
    if cover_all:
        for name in VOWEL_F:
            counts[name] = (100, 0)
        for name in CONS_M:
            counts[name] = (0, 100)
    else:
        counts["anna"] = (100, 0)
        counts["john"] = (0, 100)
    return NameStats(counts, 1940, 2000)


def _manual_model(head3, head2, stats):
    users = _corpus()
    settings = LearnerSettings(tree=TreeConfig(max_depth=3, min_samples_leaf=1))
    m2 = train_method2(users, "naive_bayes", seed=0)
    m3 = train_method3(users, "decision_tree", settings, seed=0)
    return StackedModel(head3, head2, m2, m3, stats, 5)


def test_routing_by_ssa_coverage():
    # heads are rigged so the route is observable in the probability
    head3 = LinearModel("logistic", np.zeros(3), 10.0)
    head2 = LinearModel("logistic", np.zeros(2), -10.0)
    model = _manual_model(head3, head2, _stats(cover_all=False))
    assert model.predict(UserRecord("a", "Anna Smith")).p_female > 0.99
    assert model.predict(UserRecord("b", "Zorblatt Smith")).p_female < 0.01


def test_head3_first_input_is_ssa_probability():
    head3 = LinearModel("logistic", np.array([1.0, 0.0, 0.0]), 0.0)
    head2 = LinearModel("logistic", np.zeros(2), 0.0)
    stats = NameStats({"mary": (100, 2)}, 1940, 2000)
    model = _manual_model(head3, head2, stats)
    pred = model.predict(UserRecord("m", "mary smith"))
    assert pred.p_female == pytest.approx(_sigmoid(100 / 102), abs=1e-12)


def test_uncovered_only_without_extractable_name():
    model = _manual_model(LinearModel("logistic", np.zeros(3), 0.0),
                          LinearModel("logistic", np.zeros(2), 0.0), _stats())
    pred = model.predict(UserRecord("x", "12345 !!!"))
    assert not pred.covered and pred.method == METHOD_ENSEMBLE
    assert model.predict(UserRecord("y", "Анна")).covered is False


def test_k1_rejected():
    with pytest.raises(ValueError):
        train_stacked(_corpus(), _stats(), StackedConfig(k=1))


def test_single_class_fold_rejected():
    users = _users(VOWEL_F[:6], FEMALE, "f") + _users(CONS_M[:2], MALE, "m")
    with pytest.raises(TrainingError) as err:
        train_stacked(users, _stats(), StackedConfig(k=4, seed=0))
    assert "fold" in str(err.value)


def test_perfect_bases_reproduced():
    users = _corpus()
    cfg = StackedConfig(
        k=3, seed=0, learner2="linear_svm", learner3="decision_tree",
        settings=LearnerSettings(tree=TreeConfig(max_depth=3, min_samples_leaf=1)))
    model = train_stacked(users, _stats(cover_all=True), cfg)
    preds = [model.predict(u) for u in users]
    report = score(preds, [u.label_gender for u in users])
    assert report.coverage == 1.0
    assert report.accuracy == 1.0


def test_ensemble_coverage_superset_of_base_methods():
    users = _corpus() + [UserRecord("junk", "12345", label_gender=MALE)]
    cfg = StackedConfig(
        k=3, seed=1,
        settings=LearnerSettings(tree=TreeConfig(max_depth=3, min_samples_leaf=1)))
    model = train_stacked(users, _stats(), cfg)
    n_ens = sum(model.predict(u).covered for u in users)
    n_m2 = sum(model.method2.predict(u).covered for u in users)
    n_m3 = sum(model.method3.predict(u).covered for u in users)
    assert n_ens >= max(n_m2, n_m3)


def test_perfect_base_dominates_random_one():
    # head-level check: one perfect base, one coin-flip base
    accs = []
    for seed in range(5):
        rng = np.random.default_rng(seed)
        n = 2000
        half = n // 2
        y = rng.integers(0, 2, n)
        p_good = np.where(y == 1, 0.9, 0.1) + rng.normal(0, 0.02, n)
        p_rand = rng.random(n)
        head3, head2 = fit_stacking_heads(
            np.full(half, 0.5), np.ones(half, dtype=bool),
            p_good[:half], p_rand[:half], y[:half],
            LogisticConfig(epochs=50, seed=seed))
        correct = 0
        for i in range(half, n):
            z = head2.weights[0] * p_good[i] + head2.weights[1] * p_rand[i] + head2.bias
            correct += (z >= 0) == (y[i] == 1)
        accs.append(correct / half)
    # the perfect base alone scores 1.0; the ensemble must stay within 0.05
    assert np.mean(accs) > 0.95
