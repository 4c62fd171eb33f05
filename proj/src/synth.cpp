#include "simclust/synth.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <vector>

#include "simclust/error.hpp"
#include "simclust/rng.hpp"

namespace simclust {

namespace {

constexpr std::int64_t kEpochStart = 1614556800;  // 2021-03-01T00:00:00Z
constexpr std::int64_t kSpanSeconds = 31 * 86400;

std::string padded(const std::string& prefix, std::size_t value, std::size_t width) {
    std::string digits = std::to_string(value);
    if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
    return prefix + digits;
}

std::size_t digit_count(std::size_t n) {
    std::size_t d = 1;
    while (n >= 10) {
        n /= 10;
        ++d;
    }
    return d;
}

void check_probability(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError(std::string("SynthConfig: ") + name + " must lie in [0,1]");
}

void check_mean(double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ValidationError(std::string("SynthConfig: ") + name + " must be finite and >= 0");
}

class Generator {
public:
    explicit Generator(const SynthConfig& c) : cfg_(c), rng_(c.seed) {}

    SynthOutput run();

private:
    void make_accounts();
    void emit(const std::string& author, const std::string& handle, std::string text,
              std::vector<std::string> tags, std::optional<std::string> retweet_of);
    void member_activity(const std::string& user, std::size_t community);
    void noise_activity(const std::string& user);

    const SynthConfig& cfg_;
    Rng rng_;
    std::vector<TweetRecord> records_;
    PlantedTruth truth_;

    std::vector<std::string> influencer_ids_;  // index = rank - 1
    std::vector<std::size_t> influencer_community_;
    std::vector<std::vector<std::size_t>> own_influencers_;    // community -> influencer indices
    std::vector<std::vector<double>> own_cumulative_;          // power-law weights within community
    std::vector<std::vector<std::size_t>> other_influencers_;  // community -> indices elsewhere
    std::vector<std::vector<std::string>> community_tags_;
    std::vector<std::string> shared_tags_;
    std::vector<std::string> tail_tags_;
    std::size_t next_tweet_ = 0;
};

void Generator::make_accounts() {
    const std::size_t n_inf = cfg_.n_communities * cfg_.influencers_per_community;
    const std::size_t width = std::max<std::size_t>(3, digit_count(n_inf));
    own_influencers_.assign(cfg_.n_communities, {});
    own_cumulative_.assign(cfg_.n_communities, {});
    other_influencers_.assign(cfg_.n_communities, {});
    for (std::size_t idx = 0; idx < n_inf; ++idx) {
        const std::size_t community = idx % cfg_.n_communities;
        influencer_ids_.push_back(padded("inf", idx + 1, width));
        influencer_community_.push_back(community);
        own_influencers_[community].push_back(idx);
        const double rank = static_cast<double>(idx + 1);
        const double w = cfg_.power_law_b * std::pow(rank, -cfg_.power_law_m);
        auto& cum = own_cumulative_[community];
        cum.push_back((cum.empty() ? 0.0 : cum.back()) + w);
        truth_.influencer_community[influencer_ids_.back()] = static_cast<ClusterId>(community);
    }
    for (std::size_t c = 0; c < cfg_.n_communities; ++c)
        for (std::size_t idx = 0; idx < n_inf; ++idx)
            if (influencer_community_[idx] != c) other_influencers_[c].push_back(idx);

    community_tags_.assign(cfg_.n_communities, {});
    const std::size_t tag_width = std::max<std::size_t>(2, digit_count(cfg_.hashtags_per_community));
    for (std::size_t c = 0; c < cfg_.n_communities; ++c)
        for (std::size_t t = 0; t < cfg_.hashtags_per_community; ++t)
            community_tags_[c].push_back(padded("C" + std::to_string(c) + "Tag", t, tag_width));
    for (std::size_t t = 0; t < cfg_.shared_hashtags; ++t) shared_tags_.push_back("Shared" + std::to_string(t));
    const std::size_t tail_width = std::max<std::size_t>(4, digit_count(cfg_.tail_hashtags));
    for (std::size_t t = 0; t < cfg_.tail_hashtags; ++t) tail_tags_.push_back(padded("tail", t, tail_width));
}

void Generator::emit(const std::string& author, const std::string& handle, std::string text,
                     std::vector<std::string> tags, std::optional<std::string> retweet_of) {
    TweetRecord r;
    r.tweet_id = padded("t", next_tweet_++, 9);
    r.author_id = author;
    r.author_handle = handle;
    r.created_at = kEpochStart + static_cast<std::int64_t>(rng_.uniform(kSpanSeconds));
    r.text = std::move(text);
    r.hashtags = std::move(tags);
    r.retweet_of = std::move(retweet_of);
    records_.push_back(std::move(r));
}

void Generator::member_activity(const std::string& user, std::size_t community) {
    const std::string handle = "@" + user;
    const std::uint64_t n_retweets = rng_.poisson(cfg_.retweets_per_user);
    for (std::uint64_t i = 0; i < n_retweets; ++i) {
        std::size_t target = 0;
        const auto& others = other_influencers_[community];
        if (others.empty() || rng_.bernoulli(cfg_.p_in)) {
            target = own_influencers_[community][rng_.categorical(own_cumulative_[community])];
        } else {
            target = others[rng_.uniform(others.size())];
        }
        emit(user, handle, "RT @" + influencer_ids_[target], {}, influencer_ids_[target]);
    }
    const std::uint64_t n_posts = rng_.poisson(cfg_.hashtag_posts_per_user);
    const auto& own_tags = community_tags_[community];
    for (std::uint64_t i = 0; i < n_posts; ++i) {
        const double u = rng_.uniform01();
        const std::string* tag = nullptr;
        if (u < cfg_.tail_hashtag_rate && !tail_tags_.empty()) {
            tag = &tail_tags_[rng_.uniform(tail_tags_.size())];
        } else if (u < cfg_.tail_hashtag_rate + cfg_.shared_hashtag_rate && !shared_tags_.empty()) {
            tag = &shared_tags_[rng_.uniform(shared_tags_.size())];
        } else if (!own_tags.empty()) {
            tag = &own_tags[rng_.uniform(own_tags.size())];
        } else if (!shared_tags_.empty()) {
            tag = &shared_tags_[rng_.uniform(shared_tags_.size())];
        }
        if (tag) emit(user, handle, "#" + *tag, {*tag}, std::nullopt);
    }
}

void Generator::noise_activity(const std::string& user) {
    const std::string handle = "@" + user;
    const std::uint64_t n_retweets = influencer_ids_.empty() ? 0 : rng_.poisson(cfg_.retweets_per_user);
    for (std::uint64_t i = 0; i < n_retweets; ++i) {
        const auto& target = influencer_ids_[rng_.uniform(influencer_ids_.size())];
        emit(user, handle, "RT @" + target, {}, target);
    }
    if (shared_tags_.empty()) return;
    const std::uint64_t n_posts = rng_.poisson(cfg_.hashtag_posts_per_user);
    for (std::uint64_t i = 0; i < n_posts; ++i) {
        const auto& tag = shared_tags_[rng_.uniform(shared_tags_.size())];
        emit(user, handle, "#" + tag, {tag}, std::nullopt);
    }
}

SynthOutput Generator::run() {
    make_accounts();
    for (const auto& id : influencer_ids_) emit(id, "@" + id, "original post", {}, std::nullopt);

    const std::size_t n_users = cfg_.n_communities * cfg_.users_per_community;
    const std::size_t width = std::max<std::size_t>(5, digit_count(n_users));
    std::size_t serial = 0;
    for (std::size_t c = 0; c < cfg_.n_communities; ++c) {
        for (std::size_t u = 0; u < cfg_.users_per_community; ++u) {
            const std::string id = padded("user", serial++, width);
            truth_.user_community[id] = static_cast<ClusterId>(c);
            member_activity(id, c);
        }
    }
    const std::size_t noise_width = std::max<std::size_t>(4, digit_count(cfg_.noise_users));
    for (std::size_t u = 0; u < cfg_.noise_users; ++u) {
        const std::string id = padded("noise", u, noise_width);
        truth_.user_community[id] = PlantedTruth::kNoiseCommunity;
        noise_activity(id);
    }
    return {Corpus::from_records(std::move(records_)), std::move(truth_)};
}

}  // namespace

void SynthConfig::validate() const {
    check_probability(p_in, "p_in");
    check_probability(shared_hashtag_rate, "shared_hashtag_rate");
    check_probability(tail_hashtag_rate, "tail_hashtag_rate");
    if (shared_hashtag_rate + tail_hashtag_rate > 1.0)
        throw ValidationError("SynthConfig: shared_hashtag_rate + tail_hashtag_rate must not exceed 1");
    check_mean(retweets_per_user, "retweets_per_user");
    check_mean(hashtag_posts_per_user, "hashtag_posts_per_user");
    if (!(power_law_b > 0.0) || !std::isfinite(power_law_b)) throw ValidationError("SynthConfig: power_law_b must be > 0");
    if (!(power_law_m > 0.0) || !std::isfinite(power_law_m)) throw ValidationError("SynthConfig: power_law_m must be > 0");
    if (users_per_community > 0 && influencers_per_community == 0 && retweets_per_user > 0.0)
        throw ValidationError("SynthConfig: community members need at least one influencer to retweet");
}

SynthOutput generate(const SynthConfig& config) {
    config.validate();
    return Generator(config).run();
}

void write_truth_csv(const PlantedTruth& truth, std::ostream& out) {
    out << "id,community\n";
    for (const auto* m : {&truth.influencer_community, &truth.user_community})
        for (const auto& [id, c] : *m) out << id << ',' << label_to_string(c) << '\n';
}

void write_truth_csv(const PlantedTruth& truth, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write truth file: " + path.string());
    write_truth_csv(truth, out);
}

double adjusted_rand_index(const LabelMap& a, const LabelMap& b) {
    std::map<std::pair<ClusterId, ClusterId>, std::uint64_t> table;
    std::map<ClusterId, std::uint64_t> rows;
    std::map<ClusterId, std::uint64_t> cols;
    std::uint64_t n = 0;
    for (const auto& [key, la] : a) {
        auto it = b.find(key);
        if (it == b.end()) continue;
        ++table[{la, it->second}];
        ++rows[la];
        ++cols[it->second];
        ++n;
    }
    if (n < 2) throw ValidationError("adjusted_rand_index: fewer than two shared keys");

    auto pairs = [](std::uint64_t x) { return static_cast<double>(x) * static_cast<double>(x - (x > 0 ? 1 : 0)) / 2.0; };
    double index = 0.0;
    for (const auto& [cell, count] : table) index += pairs(count);
    double sum_rows = 0.0;
    for (const auto& [label, count] : rows) sum_rows += pairs(count);
    double sum_cols = 0.0;
    for (const auto& [label, count] : cols) sum_cols += pairs(count);

    const double expected = sum_rows * sum_cols / pairs(n);
    const double max_index = 0.5 * (sum_rows + sum_cols);
    if (max_index == expected) {
        // Both partitions are all-singletons or one block; they agree exactly
        // when every contingency row maps into a single column and vice versa.
        return (table.size() == rows.size() && table.size() == cols.size()) ? 1.0 : 0.0;
    }
    return (index - expected) / (max_index - expected);
}

}  // namespace simclust
