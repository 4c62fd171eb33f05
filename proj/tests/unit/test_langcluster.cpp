#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "simclust/error.hpp"
#include "simclust/langcluster.hpp"
#include "simclust/pipeline.hpp"
#include "simclust/synth.hpp"
#include "simclust/text.hpp"

using namespace simclust;

namespace {

Corpus tag_corpus(const std::vector<std::pair<std::string, std::vector<std::string>>>& posts) {
    std::vector<TweetRecord> records;
    int id = 0;
    for (const auto& [user, tags] : posts) {
        TweetRecord r;
        r.tweet_id = "t" + std::to_string(id++);
        r.author_id = user;
        r.hashtags = tags;
        records.push_back(r);
    }
    return Corpus::from_records(std::move(records));
}

UserFeatureVector vec(const std::string& id, std::vector<std::uint32_t> bits, std::size_t dim) {
    return {id, std::move(bits), dim};
}

std::vector<UserFeatureVector> random_vectors(oracle::Gen& g, std::size_t n, std::size_t dim) {
    std::vector<UserFeatureVector> out;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::uint32_t> bits;
        for (std::uint32_t d = 0; d < dim; ++d)
            if (g.coin(0.3)) bits.push_back(d);
        if (bits.empty()) bits.push_back(static_cast<std::uint32_t>(g.range(0, dim - 1)));
        char name[16];
        std::snprintf(name, sizeof name, "u%03zu", i);
        out.push_back(vec(name, bits, dim));
    }
    return out;
}

}  // namespace

TEST_CASE("lemma map and stop words") {
    std::istringstream lemmas("# surface\tlemma\nMasken\tmaske\nimpfungen\timpfung\n");
    auto map = LemmaMap::parse(lemmas);
    CHECK(map.lookup("masken") == "maske");
    CHECK(map.lookup("MASKEN") == "maske");
    CHECK(map.lookup("Unbekannt") == "unbekannt");

    std::istringstream words("# comment\nund\nDer # inline\n\n");
    auto stops = StopWordList::parse(words);
    CHECK(stops.contains("UND"));
    CHECK(stops.contains("der"));
    CHECK_FALSE(stops.contains("maske"));

    CHECK(LemmaMap::bundled_german().lookup("Masken") == "maske");
    CHECK(StopWordList::bundled_german().contains("und"));
}

TEST_CASE("hashtag normalization") {
    LemmaMap lemmas;
    lemmas.add("masken", "maske");
    StopWordList stops;
    stops.add("und");
    auto corpus = tag_corpus({{"a", {"Masken"}}, {"a", {"Masken", "UND"}}, {"b", {"Impfung"}}});
    auto counts = normalize_hashtags(corpus, lemmas, stops);
    CHECK(counts.at("a") == LemmaCounts{{"maske", 2}});
    CHECK(counts.at("b") == LemmaCounts{{"impfung", 1}});
}

TEST_CASE("identity normalization equals a lowercased tally") {
    SynthConfig cfg;
    cfg.users_per_community = 60;
    cfg.tail_hashtags = 50;
    cfg.tail_hashtag_rate = 0.2;
    cfg.seed = 31;
    const auto corpus = generate(cfg).corpus;
    std::map<std::string, LemmaCounts> tally;
    for (const auto& r : corpus.records())
        for (const auto& h : r.hashtags) {
            std::string low;
            for (char ch : h) low += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
            ++tally[r.author_id][low];
        }
    CHECK(normalize_hashtags(corpus, LemmaMap{}, StopWordList{}) == UserLemmaCounts(tally.begin(), tally.end()));
}

TEST_CASE("vocabulary quantiles") {
    LemmaCounts totals;
    for (int i = 1; i <= 100; ++i) totals["l" + std::to_string(1000 + i)] = static_cast<std::uint64_t>(i);
    auto v = build_vocabulary(totals);
    CHECK(v.q_low_value == 97);
    CHECK(v.q_high_value == 100);
    CHECK(v.retained == std::vector<std::string>{"l1097", "l1098", "l1099", "l1100"});
    CHECK(v.index_of("l1098") == 1u);
    CHECK_FALSE(v.index_of("l1001"));

    LemmaCounts ones{{"a", 1}, {"b", 1}, {"c", 1}};
    CHECK(build_vocabulary(ones).retained.empty());

    LemmaCounts seed_topic;
    for (int i = 0; i < 10000; ++i) seed_topic["x" + std::to_string(i)] = 2 + i % 50;
    seed_topic["corona"] = 1000000;
    auto s = build_vocabulary(seed_topic);
    CHECK_FALSE(s.index_of("corona"));

    CHECK_THROWS_AS(build_vocabulary(LemmaCounts{}), DataError);
    CHECK_THROWS_AS(build_vocabulary(totals, 0.9, 0.5), ValidationError);
}

TEST_CASE("property: vocabulary equals a sort-based oracle") {
    oracle::Gen g(8);
    for (int trial = 0; trial < 200; ++trial) {
        LemmaCounts totals;
        const auto n = g.range(1, 300);
        for (std::size_t i = 0; i < n; ++i) totals["w" + std::to_string(i)] = g.range(1, g.coin(0.5) ? 5 : 500);
        const double ql = 0.5 + 0.5 * g.unit();
        const double qh = ql + (1.0 - ql) * g.unit();
        std::vector<std::uint64_t> sorted;
        for (const auto& [w, c] : totals) sorted.push_back(c);
        std::sort(sorted.begin(), sorted.end());
        auto at = [&](double q) {
            auto pos = static_cast<std::size_t>(std::ceil(q * sorted.size() - 1e-9));
            pos = std::clamp<std::size_t>(pos, 1, sorted.size());
            return sorted[pos - 1];
        };
        const auto lo = at(ql), hi = at(qh);
        std::vector<std::string> expect;
        for (const auto& [w, c] : totals)
            if (c >= 2 && c >= lo && c <= hi) expect.push_back(w);
        auto v = build_vocabulary(totals, ql, qh);
        CHECK(v.q_low_value == lo);
        CHECK(v.q_high_value == hi);
        CHECK(v.retained == expect);
    }
}

TEST_CASE("feature vector thresholds") {
    LemmaCounts totals{{"a", 10}, {"b", 10}};
    HashtagVocabulary vocab = build_vocabulary(totals, 0.01, 1.0);
    REQUIRE(vocab.dimension() == 2);

    auto kept = build_feature_vectors(UserLemmaCounts{{"u", {{"a", 4}, {"b", 3}}}}, vocab);
    REQUIRE(kept.vectors.size() == 1);
    CHECK(kept.vectors[0].bits == std::vector<std::uint32_t>{0});

    // total 6 is not above the minimum; lemmas outside the vocabulary do not count
    auto six = build_feature_vectors(UserLemmaCounts{{"u", {{"a", 3}, {"b", 3}, {"zz", 9}}}}, vocab);
    CHECK(six.vectors.empty());
    CHECK(six.users_above_min == 0);

    auto spread = build_feature_vectors(UserLemmaCounts{{"u", {{"a", 3}, {"b", 3}}}}, vocab, 3, 5);
    CHECK(spread.vectors.empty());
    CHECK(spread.users_above_min == 1);
    CHECK(spread.users_all_zero == 1);
}

TEST_CASE("property: feature vectors equal a per-user recompute") {
    oracle::Gen g(19);
    for (int trial = 0; trial < 50; ++trial) {
        LemmaCounts totals;
        UserLemmaCounts users;
        const auto n_users = g.range(1, 30);
        for (std::size_t u = 0; u < n_users; ++u)
            for (std::size_t k = 0, n_tags = g.range(0, 6); k < n_tags; ++k) {
                const auto lemma = "h" + std::to_string(g.range(0, 15));
                const auto c = g.range(1, 8);
                users["u" + std::to_string(u)][lemma] += c;
                totals[lemma] += c;
            }
        if (totals.empty()) continue;
        auto vocab = build_vocabulary(totals, 0.3, 1.0);
        auto fv = build_feature_vectors(users, vocab);
        std::vector<UserFeatureVector> expect;
        for (const auto& [user, counts] : users) {
            std::uint64_t total = 0;
            std::vector<std::uint32_t> bits;
            for (std::size_t d = 0; d < vocab.retained.size(); ++d) {
                auto it = counts.find(vocab.retained[d]);
                if (it == counts.end()) continue;
                total += it->second;
                if (it->second > 3) bits.push_back(static_cast<std::uint32_t>(d));
            }
            if (total > 6 && !bits.empty()) expect.push_back({user, bits, vocab.dimension()});
        }
        REQUIRE(fv.vectors.size() == expect.size());
        for (std::size_t i = 0; i < expect.size(); ++i) {
            CHECK(fv.vectors[i].user_id == expect[i].user_id);
            CHECK(fv.vectors[i].bits == expect[i].bits);
        }
    }
}

TEST_CASE("cosine distance") {
    std::vector<std::uint32_t> a{0, 2}, b{0}, c{1}, d{0, 1}, e{0, 2}, empty{};
    CHECK(cosine_distance(a, e) == doctest::Approx(0.0));
    CHECK(cosine_distance(b, c) == doctest::Approx(1.0));
    CHECK(cosine_distance(d, a) == doctest::Approx(0.5));
    CHECK(cosine_distance(empty, a) == 1.0);
    std::vector<double> x{1, 0, 1}, y{1, 1, 0};
    CHECK(cosine_distance(x, y) == doctest::Approx(0.5));
    UserFeatureVector u{"u", {0, 2}, 3};
    std::vector<double> centroid{0.5, 0.0, 0.5};
    CHECK(cosine_distance(u, centroid, std::sqrt(0.5)) == doctest::Approx(0.0));
}

TEST_CASE("k-means basics") {
    oracle::Gen g(3);
    auto vs = random_vectors(g, 30, 8);
    auto one = kmeans_cosine(vs, 1, 9);
    CHECK(std::all_of(one.labels.begin(), one.labels.end(), [](int l) { return l == 0; }));
    CHECK_THROWS_AS(kmeans_cosine(vs, 31, 9), ValidationError);
    CHECK_THROWS_AS(kmeans_cosine(vs, 0, 9), ValidationError);

    std::vector<UserFeatureVector> groups;
    for (int i = 0; i < 5; ++i) groups.push_back(vec("a" + std::to_string(i), {0, 1}, 4));
    for (int i = 0; i < 5; ++i) groups.push_back(vec("b" + std::to_string(i), {2, 3}, 4));
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto r = kmeans_cosine(groups, 2, seed);
        std::vector<int> expect{0, 0, 0, 0, 0, 1, 1, 1, 1, 1};
        CHECK(oracle::same_partition(r.labels, expect));
        CHECK(r.converged);
    }
}

TEST_CASE("property: k-means objective is non-increasing and label-invariant under reseeding") {
    oracle::Gen g(42);
    for (int trial = 0; trial < 60; ++trial) {
        const auto n = g.range(2, 80);
        auto vs = random_vectors(g, n, g.range(2, 12));
        const auto k = g.range(1, std::min<std::size_t>(n, 10));
        const auto seed = g.next();
        auto r = kmeans_cosine(vs, k, seed, 100);
        CHECK(r.iterations <= 100);
        for (std::size_t i = 1; i < r.objective.size(); ++i) CHECK(r.objective[i] <= r.objective[i - 1] + 1e-9);
        for (int l : r.labels) CHECK((l >= 0 && l < static_cast<int>(k)));
        auto again = kmeans_cosine(vs, k, seed, 100);
        CHECK(again.labels == r.labels);
    }
}

TEST_CASE("consensus matrix") {
    std::vector<UserFeatureVector> twins{vec("a", {0, 1}, 3), vec("b", {0, 1}, 3), vec("c", {2}, 3)};
    std::vector<std::size_t> ks{2, 2, 2, 2, 2};
    auto m = build_consensus(twins, ks, 0);
    CHECK(m.rounds() == 5);
    CHECK(m.at(0, 1) == 5);
    CHECK(m.at(0, 0) == 0);

    std::vector<UserFeatureVector> distinct{vec("a", {0}, 3), vec("b", {1}, 3), vec("c", {2}, 3)};
    std::vector<std::size_t> singletons{3};
    auto s = build_consensus(distinct, singletons, 0);
    CHECK(s.at(0, 1) == 0);
    CHECK(s.at(1, 2) == 0);

    std::vector<std::size_t> too_big{4};
    CHECK_THROWS_AS(build_consensus(twins, too_big, 0), ValidationError);
}

TEST_CASE("property: consensus equals a pairwise recount and is order independent") {
    oracle::Gen g(12);
    for (int trial = 0; trial < 60; ++trial) {
        const auto n = g.range(2, 20);
        auto vs = random_vectors(g, n, 6);
        std::vector<KMeansRound> rounds;
        for (std::size_t r = 0, R = g.range(1, 5); r < R; ++r) rounds.push_back({g.range(1, n), g.next()});
        auto m = build_consensus(vs, rounds);
        const auto& labels = m.round_labels();
        REQUIRE(labels.size() == rounds.size());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                std::uint32_t count = 0;
                if (i != j)
                    for (const auto& l : labels) count += l[i] == l[j];
                CHECK(m.at(i, j) == count);
                CHECK(m.at(i, j) == m.at(j, i));
                CHECK(m.at(i, j) <= m.rounds());
            }
        auto shuffled = rounds;
        std::reverse(shuffled.begin(), shuffled.end());
        CHECK(build_consensus(vs, shuffled) == m);
        // per-round merge equals the batch build
        ConsensusMatrix merged(m.users());
        for (const auto& rd : rounds) {
            std::vector<KMeansRound> single{rd};
            merged.merge(build_consensus(vs, single));
        }
        CHECK(merged == m);
    }
}

TEST_CASE("consensus DBSCAN") {
    const std::vector<std::string> users{"a", "b", "c", "d"};
    ConsensusMatrix all(users);
    for (int r = 0; r < 3; ++r) {
        std::vector<int> same(4, 0);
        all.accumulate(same);
    }
    auto one = dbscan_consensus(all, 2, 3);
    CHECK(one.user_label == LabelMap{{"a", 0}, {"b", 0}, {"c", 0}, {"d", 0}});

    ConsensusMatrix none(users);
    std::vector<int> apart{0, 1, 2, 3};
    none.accumulate(apart);
    auto noise = dbscan_consensus(none, 1, 1);
    for (const auto& [u, l] : noise.user_label) CHECK(l == kNoise);

    CHECK_THROWS_AS(dbscan_consensus(all, 0, 1), ValidationError);
    CHECK_THROWS_AS(dbscan_consensus(all, 1, 4), ValidationError);
    CHECK_THROWS_AS(dbscan_consensus(all, 1, 0), ValidationError);
}

TEST_CASE("property: consensus DBSCAN equals the reference on random matrices") {
    oracle::Gen g(66);
    for (int trial = 0; trial < 200; ++trial) {
        const auto n = g.range(2, 12);
        std::vector<std::string> users;
        for (std::size_t i = 0; i < n; ++i) users.push_back("u" + std::to_string(10 + i));
        ConsensusMatrix m(users);
        const auto R = g.range(1, 6);
        for (std::size_t r = 0; r < R; ++r) {
            std::vector<int> labels(n);
            const auto k = g.range(1, n);
            for (auto& l : labels) l = static_cast<int>(g.range(0, k - 1));
            m.accumulate(labels);
        }
        const auto eps = g.range(1, R);
        const auto min_pts = g.range(1, 4);
        oracle::Graph adj(n);
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t j = 0; j < n; ++j)
                if (i != j && m.at(i, j) >= eps) adj[i].push_back(j);
        const auto expect = oracle::reference_dbscan(adj, min_pts);
        const auto got = dbscan_consensus(m, min_pts, eps);
        std::vector<int> labels;
        for (const auto& u : users) labels.push_back(got.user_label.at(u));
        CHECK(labels == expect);
    }
}

TEST_CASE("default density parameters") {
    CHECK(default_params(1000, 15) == DensityParams{20, 12});
    CHECK(default_params(10, 1) == DensityParams{1, 1});
    CHECK(default_params(50, 10) == DensityParams{1, 8});
}

TEST_CASE("cluster profiles") {
    LemmaCounts totals{{"in", 10}, {"both", 20}};
    auto vocab = build_vocabulary(totals, 0.01, 1.0);
    UserLemmaCounts per_user{{"a", {{"in", 10}, {"both", 10}}}, {"b", {{"both", 10}}}};
    LangClusterResult r;
    r.user_label = {{"a", 0}, {"b", 1}};
    auto p = profile_clusters(r, per_user, vocab);
    // cluster 0 total 20, overall total 30
    const auto& c0 = p.clusters.at(0);
    REQUIRE(c0.size() == 2);
    CHECK(c0[0].lemma == "in");
    CHECK(c0[0].lift == doctest::Approx((10.0 / 20.0) / (10.0 / 30.0)));
    CHECK(c0[1].lift == doctest::Approx((10.0 / 20.0) / (20.0 / 30.0)));
    CHECK(p.clusters.at(1).size() == 1);

    UserLemmaCounts even{{"a", {{"in", 5}, {"both", 10}}}, {"b", {{"in", 5}, {"both", 10}}}};
    auto q = profile_clusters(r, even, vocab);
    for (const auto& e : q.clusters.at(0)) CHECK(e.lift == doctest::Approx(1.0));

    LangClusterResult silent;
    silent.user_label = {{"nobody", 3}};
    auto w = profile_clusters(silent, per_user, vocab);
    CHECK(w.clusters.empty());
    CHECK_FALSE(w.warnings.empty());
}
