import math

import pytest

import simclust


def small_corpus(seed=5):
    cfg = simclust.SynthConfig()
    cfg.users_per_community = 60
    cfg.influencers_per_community = 4
    cfg.hashtag_posts_per_user = 30
    cfg.seed = seed
    return simclust.generate(cfg)


def test_generate_is_deterministic():
    a, inf_a, users_a = small_corpus()
    b, inf_b, users_b = small_corpus()
    assert len(a) == len(b) > 0
    assert [r.tweet_id for r in a.records()] == [r.tweet_id for r in b.records()]
    assert inf_a == inf_b and users_a == users_b
    assert len(inf_a) == 12


def test_parse_and_stats():
    corpus = simclust.Corpus.parse(
        '{"id":"1","author_id":"a","created_at":1,"retweet_of":"b"}\n'
        '{"id":"2","author_id":"c","created_at":2,"retweet_of":"b"}\n'
        "not json\n"
    )
    assert len(corpus) == 2
    assert corpus.report.malformed == 1
    assert corpus.retweet_counts() == {"b": 2}
    s = simclust.stats(corpus, 1)
    assert s.retweet_share_of_top_k == 1.0


def test_empty_corpus_raises_data_error():
    with pytest.raises(simclust.DataError):
        simclust.Corpus.parse("garbage\n")


def test_power_law_fit():
    counts = [39215.0 * x ** -0.65 for x in range(1, 101)]
    fit = simclust.fit_power_law(counts)
    assert math.isclose(fit.m, 0.65, abs_tol=1e-6)
    assert math.isclose(fit.b, 39215.0, rel_tol=1e-6)


def test_modified_dbscan_path():
    labels = simclust.modified_dbscan([[1], [0, 2], [1, 3], [2]], 2)
    assert labels == [0, 0, 0, simclust.NOISE]


def test_default_params():
    assert simclust.default_params(1000, 15) == (20, 12)


def test_ari():
    assert simclust.adjusted_rand_index({"a": 1, "b": 1, "c": 2}, {"a": 7, "b": 7, "c": 3}) == 1.0


def test_pipelines_and_sankey():
    corpus, _, _ = small_corpus()
    net = simclust.run_net_pipeline(corpus, threshold_fraction=0.15)
    assert set(net["influencer_label"]) <= {r[0] for r in simclust.rank_influencers(corpus, 100)}
    lang = simclust.run_lang_pipeline(corpus, k_list=[2, 3, 4], seed=1)
    assert lang["rounds"] == 3
    flows = simclust.build_sankey(net["user_label"], lang["user_label"])
    clustered = [l for l in net["user_label"].values() if l != simclust.NOISE]
    assert sum(count for _, _, count in flows) == len(clustered)
    a, b = simclust.overlap_fraction(net["user_label"], lang["user_label"])
    assert 0.0 <= a <= 1.0 and 0.0 <= b <= 1.0


def test_invalid_config_raises_validation_error():
    cfg = simclust.SynthConfig()
    cfg.p_in = 2.0
    with pytest.raises(simclust.ValidationError):
        simclust.generate(cfg)
