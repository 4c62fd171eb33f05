#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>

#include "simclust/corpus.hpp"
#include "simclust/labels.hpp"

namespace simclust {

/// Parameters of a synthetic corpus with planted communities.
///
/// Influencer popularity follows b * x^-m over 1-based global ranks. Ranks
/// are dealt round-robin to communities, so every community owns a spread of
/// popular and unpopular influencers.
struct SynthConfig {
    std::size_t n_communities = 3;
    std::size_t influencers_per_community = 10;
    std::size_t users_per_community = 1000;
    std::size_t noise_users = 0;
    double p_in = 0.9;                  // member retweet stays in own community
    double retweets_per_user = 3.0;     // Poisson mean
    double power_law_b = 39215.0;
    double power_law_m = 0.65;
    std::size_t hashtags_per_community = 20;
    std::size_t shared_hashtags = 3;
    double hashtag_posts_per_user = 40.0;  // Poisson mean
    double shared_hashtag_rate = 0.2;      // share of member posts using a shared tag
    std::size_t tail_hashtags = 0;         // long tail of rarely used tags
    double tail_hashtag_rate = 0.0;        // share of member posts using a tail tag
    std::uint64_t seed = 0;

    /// Throws ValidationError on the first violated invariant.
    void validate() const;
};

/// Ground-truth community of every generated account.
struct PlantedTruth {
    static constexpr ClusterId kNoiseCommunity = kNoise;

    LabelMap influencer_community;
    LabelMap user_community;  // noise users map to kNoiseCommunity
};

struct SynthOutput {
    Corpus corpus;
    PlantedTruth truth;
};

/// Fully deterministic for a given config (including seed).
SynthOutput generate(const SynthConfig& config);

/// Two-column CSV: id,community (noise users get NOISE).
void write_truth_csv(const PlantedTruth& truth, std::ostream& out);
void write_truth_csv(const PlantedTruth& truth, const std::filesystem::path& path);

/// Adjusted Rand index over the keys present in both maps. Labels are
/// compared as partitions, so pseudo-labels such as NOISE form one block.
/// Throws ValidationError when fewer than two keys are shared.
double adjusted_rand_index(const LabelMap& a, const LabelMap& b);

}  // namespace simclust
