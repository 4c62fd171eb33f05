#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "simclust/labels.hpp"
#include "simclust/langcluster.hpp"
#include "simclust/netcluster.hpp"

namespace simclust {

struct SankeyFlow {
    ClusterId source = 0;  // network cluster (or NOISE when requested)
    ClusterId target = 0;  // language cluster or UNDEFINED
    std::uint64_t count = 0;

    friend bool operator==(const SankeyFlow&, const SankeyFlow&) = default;
};

struct SankeyFlows {
    std::vector<SankeyFlow> flows;                 // sorted by (source, target); zero flows omitted
    std::map<ClusterId, std::uint64_t> source_totals;
};

/// Cross-tabulates network-cluster users against language clusters. Users
/// without a language label, or labeled NOISE there, flow to UNDEFINED.
/// NOISE network users are left out unless include_noise_source is set.
SankeyFlows build_sankey(const LabelMap& net_users, const LabelMap& lang_users, bool include_noise_source = false);
SankeyFlows build_sankey(const NetClusterResult& net, const LangClusterResult& lang, bool include_noise_source = false);

struct OverlapFractions {
    double net_unclustered_in_lang = 0.0;
    double lang_unclustered_in_net = 0.0;
    std::vector<std::string> warnings;
};

/// Share of users clustered (non-NOISE) by one method that the other
/// method leaves unlabeled or NOISE.
OverlapFractions overlap_fraction(const LabelMap& net_users, const LabelMap& lang_users);

/// Counts captured while the network pipeline runs.
struct NetIntermediates {
    std::optional<std::uint64_t> all_users;
    std::optional<std::uint64_t> retweeting_users;
    std::optional<std::uint64_t> influencer_retweeting_users;
    std::optional<std::uint64_t> users_above_threshold;
    std::optional<std::uint64_t> all_tweets;
    std::optional<std::uint64_t> retweets;
    std::optional<std::uint64_t> influencer_retweets;
    std::optional<std::uint64_t> retweets_above_threshold;
};

/// Counts captured while the language pipeline runs.
struct LangIntermediates {
    std::optional<std::uint64_t> all_hashtags;       // distinct lemmas
    std::optional<std::uint64_t> retained_hashtags;
    std::optional<std::uint64_t> all_users;
    std::optional<std::uint64_t> users_above_min;
    std::optional<std::uint64_t> users_with_vector;
};

struct FilterStage {
    std::string chain;  // e.g. "network/users"
    std::string name;
    std::uint64_t items_in = 0;
    std::uint64_t items_out = 0;
    double filtered_fraction = 0.0;
};

struct FilterReport {
    std::vector<FilterStage> stages;  // chains in order; within a chain out(k) == in(k+1)
};

/// Every listed intermediate is required; a missing one raises DataError
/// naming the stage.
FilterReport filter_funnel(const NetIntermediates& net, const LangIntermediates& lang);

}  // namespace simclust
