from datetime import datetime

import pytest

from namecast.errors import TrainingError
from namecast.ml import ForestConfig
from namecast.person import (AccountFeatureConfig, extract_account_features,
                             filter_persons, person_label01,
                             train_person_filter)
from namecast.records import UserRecord
from namecast.ssa import NameStats

SNAPSHOT = datetime(2016, 1, 1)
STATS = NameStats({"mary": (100, 2), "john": (2, 100)}, 1940, 2000)


def test_hand_computed_feature_example():
    user = UserRecord("u", "mary", description="I love dogs \U0001F436",
                      statuses_count=120, created_at=datetime(2015, 1, 1))
    f = extract_account_features(user, SNAPSHOT, STATS)
    assert f.has_first_person_pronoun == 1
    assert f.emoji_count == 1
    assert f.description_length == 14  # UTF-16 units: the emoji counts twice
    assert f.has_external_url == 0
    assert f.name_in_ssa == 1
    assert f.tweets_per_month == 10.0


def test_brand_like_features():
    user = UserRecord("b", "Widgets Inc", description="Official Widgets Inc",
                      url="https://widgets.example", created_at=datetime(2015, 1, 1))
    f = extract_account_features(user, SNAPSHOT, STATS)
    assert f.has_first_person_pronoun == 0
    assert f.has_external_url == 1
    assert f.name_in_ssa == 0
    assert f.emoji_count == 0


def test_social_url_not_external():
    for url in ("https://twitter.com/someone", "http://www.facebook.com/x",
                "https://m.youtube.com/c/x"):
        user = UserRecord("u", "mary", url=url, created_at=datetime(2015, 1, 1))
        assert extract_account_features(user, SNAPSHOT, STATS).has_external_url == 0
    user = UserRecord("u", "mary", url="https://myblog.net",
                      created_at=datetime(2015, 1, 1))
    assert extract_account_features(user, SNAPSHOT, STATS).has_external_url == 1


def test_new_account_month_floor():
    user = UserRecord("u", "mary", statuses_count=50,
                      created_at=datetime(2015, 12, 20))
    f = extract_account_features(user, SNAPSHOT, STATS)
    assert f.tweets_per_month == 50.0


def test_snapshot_before_creation_rejected():
    user = UserRecord("u", "mary", created_at=datetime(2017, 1, 1))
    with pytest.raises(ValueError):
        extract_account_features(user, SNAPSHOT, STATS)


def test_missing_created_at_defaults_to_one_month():
    user = UserRecord("u", "mary", statuses_count=30)
    assert extract_account_features(user, SNAPSHOT, STATS).tweets_per_month == 30.0


def test_pronoun_is_word_bounded():
    user = UserRecord("u", "mary", description="inspiring wellness tips",
                      created_at=datetime(2015, 1, 1))
    assert extract_account_features(user, SNAPSHOT, STATS).has_first_person_pronoun == 0
    user2 = UserRecord("u", "mary", description="We post updates",
                       created_at=datetime(2015, 1, 1))
    assert extract_account_features(user2, SNAPSHOT, STATS).has_first_person_pronoun == 1


def _separable_users(n_person=16, n_brand=12):
    users = []
    for i in range(n_person):
        users.append(UserRecord(
            f"p{i}", "mary" if i % 2 else "john",
            description=f"I tweet about thing {i}",
            followers_count=100 + i, friends_count=200,
            statuses_count=600, created_at=datetime(2015, 1, 1),
            url=None, label_gender="female" if i % 2 else "male",
            label_confidence=1.0))
    for i in range(n_brand):
        users.append(UserRecord(
            f"b{i}", f"Brand {i} News",
            description="Official updates and deals",
            followers_count=50_000 + i, friends_count=10,
            statuses_count=40_000, created_at=datetime(2013, 1, 1),
            url=f"https://brand{i}.example.com", label_gender="brand",
            label_confidence=1.0))
    return users


def test_separable_fixture_perfect_holdout():
    users = _separable_users()
    train = users[: 12] + users[16:24]
    test = users[12:16] + users[24:]
    model = train_person_filter(train, SNAPSHOT, STATS,
                                ForestConfig(n_trees=25, seed=0))
    persons, removed, removed_count = filter_persons(model, test, SNAPSHOT, STATS)
    assert {u.user_id for u in persons} == {u.user_id for u in test
                                            if u.label_gender != "brand"}
    assert removed_count == len(removed) == 4


def test_partition_conservation_and_determinism():
    users = _separable_users()
    model = train_person_filter(users, SNAPSHOT, STATS,
                                ForestConfig(n_trees=10, seed=1))
    persons, removed, count = filter_persons(model, users, SNAPSHOT, STATS)
    assert len(persons) + len(removed) == len(users)
    assert count == len(removed)
    again = filter_persons(model, users, SNAPSHOT, STATS)
    assert [u.user_id for u in again[0]] == [u.user_id for u in persons]


def test_threshold_monotonicity():
    users = _separable_users()
    model = train_person_filter(users, SNAPSHOT, STATS,
                                ForestConfig(n_trees=15, seed=2))
    sizes = []
    for threshold in (0.1, 0.3, 0.5, 0.7, 0.9):
        persons, _, _ = filter_persons(model, users, SNAPSHOT, STATS, threshold)
        sizes.append(len(persons))
    assert sizes == sorted(sizes, reverse=True)


def test_single_class_rejected():
    persons_only = [u for u in _separable_users() if u.label_gender != "brand"]
    with pytest.raises(TrainingError):
        train_person_filter(persons_only, SNAPSHOT, STATS)


def test_unknown_labels_excluded():
    assert person_label01(UserRecord("u", "x", label_gender="unknown")) is None
    assert person_label01(UserRecord("u", "x", label_gender=None)) is None
    assert person_label01(UserRecord("u", "x", label_gender="female")) == 1
    assert person_label01(UserRecord("u", "x", label_gender="brand")) == 0


def test_emoji_ranges_configurable():
    cfg = AccountFeatureConfig(emoji_ranges=((0x2600, 0x27BF),))
    user = UserRecord("u", "mary", description="\U0001F436 ☔",
                      created_at=datetime(2015, 1, 1))
    f = extract_account_features(user, SNAPSHOT, STATS, cfg)
    assert f.emoji_count == 1  # only the umbrella falls in the configured range
