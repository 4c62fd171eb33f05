#pragma once

#include <optional>
#include <string>
#include <vector>

#include "simclust/compare.hpp"
#include "simclust/corpus.hpp"
#include "simclust/langcluster.hpp"
#include "simclust/netcluster.hpp"

namespace simclust {

struct NetPipelineParams {
    std::size_t top_k = 100;
    double threshold_fraction = 0.0065;
    std::optional<double> explicit_threshold;
    std::size_t min_pts = 2;
    bool normalize = true;
    double rank_offset = 1.0;

    void validate() const;
};

/// Every intermediate of a network clustering run.
struct NetRun {
    InfluencerRanking ranking;
    std::optional<PowerLawFit> fit;
    RetweetGraph per_user;
    RetweetGraph aggregated;
    RetweetGraph weighted;  // normalized, or a copy of aggregated when normalization is off
    RetweetGraph thresholded;
    double threshold = 0.0;
    NetClusterResult result;
    NetIntermediates intermediates;
    std::vector<std::string> warnings;
};

/// rank -> edges -> superusers -> log-rank weights -> threshold -> modified
/// DBSCAN -> superuser/user assignment. A corpus without retweets gives an
/// empty result and a warning.
NetRun run_net_pipeline(const Corpus& corpus, const NetPipelineParams& params);

/// 5, 10, ..., 75.
std::vector<std::size_t> default_k_list();

struct LangPipelineParams {
    double q_low = 0.97;
    double q_high = 0.9998;
    std::uint64_t per_tag_min = 3;
    std::uint64_t per_user_min = 6;
    std::vector<std::size_t> k_list = default_k_list();
    double min_pts_frac = 0.02;
    double eps_frac = 0.8;
    std::optional<std::size_t> min_pts;  // overrides the fraction rule
    std::optional<std::size_t> eps;
    std::uint64_t seed = 0;
    std::size_t profile_top_n = 25;

    void validate() const;
};

struct LangRun {
    UserLemmaCounts per_user;
    HashtagVocabulary vocab;
    FeatureVectorSet features;
    std::vector<std::size_t> k_used;  // k_list without entries larger than the user count
    ConsensusMatrix consensus;
    DensityParams density;
    LangClusterResult result;
    ClusterProfile profile;
    LangIntermediates intermediates;
    std::vector<std::string> warnings;
};

/// hashtags -> lemmas -> vocabulary -> binary vectors -> consensus k-means
/// -> consensus DBSCAN -> profiles.
LangRun run_lang_pipeline(const Corpus& corpus, const LangPipelineParams& params, const LemmaMap& lemmas,
                          const StopWordList& stops);

}  // namespace simclust
