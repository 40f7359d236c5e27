from datetime import datetime

import numpy as np
import pytest

from namecast.config import PipelineConfig
from namecast.dataio import (aggregate_by_county, load_labeled_corpus,
                             load_tweets, load_user_records, write_county_csv)
from namecast.ensemble import StackedModel
from namecast.errors import LoadError
from namecast.methods import LearnerSettings, train_method2, train_method3
from namecast.ml import ForestConfig, LinearModel, TreeConfig
from namecast.person import train_person_filter
from namecast.records import BRAND, FEMALE, MALE
from namecast.ssa import NameStats

from test_methods import CONS_M, VOWEL_F, _users
from test_person import _separable_users

CSV_HEADER = ("user_id,name,screen_name,description,gender,gender:confidence,"
              "created,tweet_count,followers_count,friends_count,url")


def _write_corpus(path, rows):
    path.write_text(CSV_HEADER + "\n" + "\n".join(rows) + "\n")
    return str(path)


def test_load_corpus_filters(tmp_path):
    rows = [
        "u1,Mary Smith,mary,hi I tweet,female,1.0,2015-01-01T00:00:00,100,10,20,",
        "u2,John Doe,john,,male,0.8,2015-01-01T00:00:00,50,5,9,",
        "u3,Acme Corp,acme,Official,brand,1.0,2013-01-01T00:00:00,999,1,2,https://acme.example",
        "u4,Pat Riley,pat,,unknown,1.0,2015-01-01T00:00:00,10,1,2,",
        "u5,Ana Lopez,ana,,female,1.0,2015-01-01T00:00:00,10,1,2,",
    ]
    path = _write_corpus(tmp_path / "corpus.csv", rows)
    cfg = PipelineConfig()

    records, report = load_labeled_corpus(path, cfg, "gender")
    assert [r.user_id for r in records] == ["u1", "u5"]
    assert report.retained == 2
    assert report.dropped_confidence == 1  # u2
    assert report.dropped_gender == 2      # u3 brand + u4 unknown
    assert records[0].statuses_count == 100
    assert records[0].created_at == datetime(2015, 1, 1)

    person_records, _ = load_labeled_corpus(path, cfg, "person")
    assert [r.user_id for r in person_records] == ["u1", "u3", "u5"]

    cfg0 = PipelineConfig(confidence_threshold=0.0)
    all_mf, _ = load_labeled_corpus(path, cfg0, "gender")
    assert [r.user_id for r in all_mf] == ["u1", "u2", "u5"]


def test_header_only_file(tmp_path):
    path = (tmp_path / "empty.csv")
    path.write_text(CSV_HEADER + "\n")
    records, report = load_labeled_corpus(str(path), PipelineConfig(), "gender")
    assert records == [] and report.n_rows == 0


def test_missing_mapped_column_is_error(tmp_path):
    path = _write_corpus(tmp_path / "c.csv", ["u1,Mary,m,,female,1.0,,1,1,1,"])
    cfg = PipelineConfig(columns={"gender": "sex"})
    with pytest.raises(LoadError) as err:
        load_labeled_corpus(str(path), cfg, "gender")
    assert "sex" in str(err.value)


def test_unparseable_rows_skipped_and_counted(tmp_path):
    rows = [
        "u1,Mary,m,,female,not_a_number,,1,1,1,",
        "u2,Ann,a,,female,1.0,,1,1,1,",
        "u3,Bob,b,,male,1.0,,1,1,1,",
    ]
    path = _write_corpus(tmp_path / "c.csv", rows)
    records, report = load_labeled_corpus(str(path), PipelineConfig(), "gender")
    assert report.skipped_parse == 1
    assert [r.user_id for r in records] == ["u2", "u3"]


def test_load_tweets(tmp_path):
    path = tmp_path / "tweets.ndjson"
    path.write_text("\n".join([
        '{"user_id": "a", "name": "Mary", "county_fips": "06037", "tweet_id": "1"}',
        '{"user_id": "a", "name": "Mary", "county_fips": "06037", "tweet_id": "2"}',
        '{"user_id": "b", "name": "John", "county_fips": "06059", "tweet_id": "3"}',
        '{"user_id": "c", "name": "NoCounty"}',
    ]) + "\n")
    tweets, skipped = load_tweets(str(path))
    assert len(tweets) == 3 and skipped == 1
    assert len({t.user_id for t in tweets}) == 2
    # without the county requirement the record loads
    records, _ = load_user_records(str(path))
    assert len(records) == 4


def test_load_tweets_empty_file(tmp_path):
    path = tmp_path / "tweets.ndjson"
    path.write_text("")
    tweets, skipped = load_tweets(str(path))
    assert tweets == [] and skipped == 0


def _rigged_models():
    """Stacked model whose label equals the SSA label, plus a person filter
    trained on the separable person/brand fixture."""
    stats = NameStats({name: (100, 0) for name in VOWEL_F}
                      | {name: (0, 100) for name in CONS_M}, 1940, 2000)
    users = _users(VOWEL_F, FEMALE, "f") + _users(CONS_M, MALE, "m")
    settings = LearnerSettings(tree=TreeConfig(max_depth=3, min_samples_leaf=1))
    m2 = train_method2(users, "naive_bayes", seed=0)
    m3 = train_method3(users, "decision_tree", settings, seed=0)
    head3 = LinearModel("logistic", np.array([50.0, 0.0, 0.0]), -25.0)
    head2 = LinearModel("logistic", np.array([50.0, 0.0]), -25.0)
    stacked = StackedModel(head3, head2, m2, m3, stats, 3)
    forest = train_person_filter(_separable_users(), datetime(2016, 1, 1), stats,
                                 ForestConfig(n_trees=15, seed=0))
    return stacked, forest


def _tweet(user_id, name, county, tweet_id):
    from namecast.dataio import TweetRecord
    from namecast.records import UserRecord
    user = UserRecord(user_id, name, description="I tweet",
                      created_at=datetime(2015, 1, 1), county_fips=county)
    return TweetRecord(user, tweet_id)


def test_aggregate_hand_example(tmp_path):
    stacked, forest = _rigged_models()
    # one county, 4 tweets by 3 person users classified F, F, M
    tweets = [
        _tweet("u1", "anna", "06037", "t1"),
        _tweet("u1", "anna", "06037", "t2"),
        _tweet("u2", "lucy", "06037", "t3"),
        _tweet("u3", "john", "06037", "t4"),
    ]
    out = aggregate_by_county(tweets, forest, stacked, datetime(2016, 1, 1))
    assert len(out) == 1
    agg = out[0]
    assert agg.county_fips == "06037"
    assert agg.n_tweets == 4 and agg.n_users == 3
    assert agg.n_person_users == 3
    assert (agg.n_female, agg.n_male) == (2, 1)
    assert agg.pct_female == pytest.approx(2 / 3)

    path = tmp_path / "counties.csv"
    write_county_csv(out, path)
    lines = path.read_text().splitlines()
    assert lines[0] == ("county_fips,n_tweets,n_users,n_person_users,"
                        "n_female,n_male,pct_female")
    assert lines[1] == "06037,4,3,3,2,1,0.6667"


def test_aggregate_brand_only_county():
    stacked, forest = _rigged_models()
    from namecast.dataio import TweetRecord
    from namecast.records import UserRecord
    brand = UserRecord("b1", "Acme News", description="Official deals",
                       url="https://acme.example.com",
                       followers_count=60_000, friends_count=5,
                       statuses_count=40_000,
                       created_at=datetime(2013, 1, 1), county_fips="06001")
    out = aggregate_by_county([TweetRecord(brand, "t1")], forest, stacked,
                              datetime(2016, 1, 1))
    assert len(out) == 1
    agg = out[0]
    assert agg.n_person_users == 0 and agg.pct_female is None
    assert agg.n_users == 1 and agg.n_tweets == 1


def test_aggregate_empty_input():
    stacked, forest = _rigged_models()
    assert aggregate_by_county([], forest, stacked, datetime(2016, 1, 1)) == []


def test_aggregate_sorted_by_volume():
    stacked, forest = _rigged_models()
    tweets = ([_tweet("u1", "anna", "06059", f"a{i}") for i in range(3)]
              + [_tweet("u2", "lucy", "06001", f"b{i}") for i in range(5)]
              + [_tweet("u3", "mia", "06037", f"c{i}") for i in range(3)])
    out = aggregate_by_county(tweets, forest, stacked, datetime(2016, 1, 1))
    assert [a.county_fips for a in out] == ["06001", "06037", "06059"]
    assert sum(a.n_tweets for a in out) == len(tweets)
