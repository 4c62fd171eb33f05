#include "simclust/compare.hpp"

#include <set>

#include "simclust/error.hpp"

namespace simclust {

SankeyFlows build_sankey(const LabelMap& net_users, const LabelMap& lang_users, bool include_noise_source) {
    std::map<std::pair<ClusterId, ClusterId>, std::uint64_t> cells;
    SankeyFlows out;
    for (const auto& [user, source] : net_users) {
        if (source == kNoise && !include_noise_source) continue;
        if (source < 0 && source != kNoise) continue;
        ClusterId target = kUndefined;
        if (auto it = lang_users.find(user); it != lang_users.end() && it->second >= 0) target = it->second;
        ++cells[{source, target}];
        ++out.source_totals[source];
    }
    for (const auto& [key, count] : cells) out.flows.push_back({key.first, key.second, count});
    return out;
}

SankeyFlows build_sankey(const NetClusterResult& net, const LangClusterResult& lang, bool include_noise_source) {
    return build_sankey(net.user_label, lang.user_label, include_noise_source);
}

namespace {

// share of a's clustered users that b does not cluster; nullopt if a clusters nobody
std::optional<double> unclustered_share(const LabelMap& a, const LabelMap& b) {
    std::uint64_t clustered = 0;
    std::uint64_t missing = 0;
    for (const auto& [user, label] : a) {
        if (label < 0) continue;
        ++clustered;
        auto it = b.find(user);
        if (it == b.end() || it->second < 0) ++missing;
    }
    if (clustered == 0) return std::nullopt;
    return static_cast<double>(missing) / static_cast<double>(clustered);
}

}  // namespace

OverlapFractions overlap_fraction(const LabelMap& net_users, const LabelMap& lang_users) {
    OverlapFractions out;
    if (auto f = unclustered_share(net_users, lang_users)) {
        out.net_unclustered_in_lang = *f;
    } else {
        out.warnings.push_back("network result has no clustered users");
    }
    if (auto f = unclustered_share(lang_users, net_users)) {
        out.lang_unclustered_in_net = *f;
    } else {
        out.warnings.push_back("language result has no clustered users");
    }
    return out;
}

namespace {

std::uint64_t require(const std::optional<std::uint64_t>& v, const std::string& stage) {
    if (!v) throw DataError("filter_funnel: missing intermediate for stage '" + stage + "'");
    return *v;
}

void add_chain(FilterReport& report, const std::string& chain, const std::vector<std::string>& names,
               const std::vector<std::uint64_t>& counts) {
    for (std::size_t i = 0; i + 1 < counts.size(); ++i) {
        FilterStage s;
        s.chain = chain;
        s.name = names[i];
        s.items_in = counts[i];
        s.items_out = counts[i + 1];
        if (s.items_out > s.items_in)
            throw DataError("filter_funnel: stage '" + s.name + "' of " + chain + " grows from " +
                            std::to_string(s.items_in) + " to " + std::to_string(s.items_out));
        s.filtered_fraction =
            s.items_in == 0 ? 0.0 : static_cast<double>(s.items_in - s.items_out) / static_cast<double>(s.items_in);
        report.stages.push_back(std::move(s));
    }
}

}  // namespace

FilterReport filter_funnel(const NetIntermediates& net, const LangIntermediates& lang) {
    FilterReport report;
    add_chain(report, "network/users", {"retweeting users", "users retweeting influencers", "threshold"},
              {require(net.all_users, "all users"), require(net.retweeting_users, "retweeting users"),
               require(net.influencer_retweeting_users, "users retweeting influencers"),
               require(net.users_above_threshold, "threshold")});
    add_chain(report, "network/tweets", {"retweets", "retweets of influencers", "threshold"},
              {require(net.all_tweets, "all tweets"), require(net.retweets, "retweets"),
               require(net.influencer_retweets, "retweets of influencers"),
               require(net.retweets_above_threshold, "threshold")});
    add_chain(report, "language/hashtags", {"quantile vocabulary"},
              {require(lang.all_hashtags, "all hashtags"), require(lang.retained_hashtags, "quantile vocabulary")});
    add_chain(report, "language/users", {"per-user minimum", "non-empty vector"},
              {require(lang.all_users, "all users"), require(lang.users_above_min, "per-user minimum"),
               require(lang.users_with_vector, "non-empty vector")});
    return report;
}

}  // namespace simclust
