#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "simclust/corpus.hpp"
#include "simclust/labels.hpp"

namespace simclust {

/// Dictionary lemmatizer. Unknown tokens map to themselves, lowercased.
class LemmaMap {
public:
    LemmaMap() = default;

    /// Two tab-separated columns per line: surface form, lemma. Blank lines
    /// and lines starting with '#' are ignored.
    static LemmaMap parse(std::istream& in);
    static LemmaMap load(const std::filesystem::path& path);
    /// Small German table shipped with the library.
    static LemmaMap bundled_german();

    void add(std::string_view surface, std::string_view lemma);
    std::string lookup(std::string_view token) const;
    std::size_t size() const { return table_.size(); }

private:
    std::unordered_map<std::string, std::string> table_;
};

/// Case-insensitive stop-word set. File format: one word per line, '#'
/// starts a comment.
class StopWordList {
public:
    StopWordList() = default;

    static StopWordList parse(std::istream& in);
    static StopWordList load(const std::filesystem::path& path);
    static StopWordList bundled_german();

    void add(std::string_view word);
    bool contains(std::string_view token) const;
    std::size_t size() const { return words_.size(); }

private:
    std::unordered_set<std::string> words_;
};

using LemmaCounts = std::map<std::string, std::uint64_t>;
using UserLemmaCounts = std::map<std::string, LemmaCounts>;

/// Lowercase, lemmatize, drop stop words; counts per author.
UserLemmaCounts normalize_hashtags(const Corpus& corpus, const LemmaMap& lemmas, const StopWordList& stops);

/// Corpus-wide lemma totals.
LemmaCounts total_counts(const UserLemmaCounts& per_user);

/// Nearest-rank quantile of an ascending sequence: the value at 1-based
/// position ceil(q * N), clamped to [1, N].
std::uint64_t nearest_rank_quantile(std::span<const std::uint64_t> ascending, double q);

struct HashtagVocabulary {
    std::vector<std::string> retained;  // lexicographic; defines vector dimensions
    LemmaCounts total_counts;
    std::uint64_t q_low_value = 0;
    std::uint64_t q_high_value = 0;

    std::optional<std::size_t> index_of(std::string_view lemma) const;
    std::size_t dimension() const { return retained.size(); }
};

/// Keeps lemmas with total >= 2 and q_low_value <= total <= q_high_value,
/// where the quantiles are taken over the per-lemma totals. Throws
/// DataError on empty input, ValidationError on bad quantiles.
HashtagVocabulary build_vocabulary(const LemmaCounts& totals, double q_low = 0.97, double q_high = 0.9998);

/// Sparse binary vector: the set bits, ascending.
struct UserFeatureVector {
    std::string user_id;
    std::vector<std::uint32_t> bits;
    std::size_t dimension = 0;

    std::vector<double> dense() const;
};

struct FeatureVectorSet {
    std::vector<UserFeatureVector> vectors;  // ascending user id
    std::size_t users_considered = 0;
    std::size_t users_above_min = 0;   // total retained usage > per_user_min
    std::size_t users_all_zero = 0;    // above min but no tag used > per_tag_min times
};

/// A user is kept when their total usage of retained lemmas exceeds
/// per_user_min; bit d is set when their count for lemma d exceeds
/// per_tag_min. Users ending with no bit set are dropped and counted.
FeatureVectorSet build_feature_vectors(const UserLemmaCounts& per_user, const HashtagVocabulary& vocab,
                                       std::uint64_t per_tag_min = 3, std::uint64_t per_user_min = 6);

/// 1 - cos(a, b). Zero vectors are at distance 1 from everything.
double cosine_distance(std::span<const std::uint32_t> a_bits, std::span<const std::uint32_t> b_bits);
double cosine_distance(const UserFeatureVector& a, std::span<const double> centroid, double centroid_norm);
double cosine_distance(std::span<const double> a, std::span<const double> b);

struct KMeansResult {
    std::vector<int> labels;         // aligned with the input vectors, 0..k-1
    std::size_t iterations = 0;
    bool converged = false;
    /// Sum of cosine distances to the assigned centroid, recorded after each
    /// assignment step.
    std::vector<double> objective;
};

/// Lloyd iterations under cosine distance.
///
/// Centroids start at k distinct input vectors drawn without replacement and
/// are updated to the mean of their members' unit-normalized vectors. An
/// emptied cluster is reseeded with the vector farthest from its nearest
/// centroid. Throws ValidationError unless 1 <= k <= n.
KMeansResult kmeans_cosine(std::span<const UserFeatureVector> vectors, std::size_t k, std::uint64_t seed,
                           std::size_t max_iter = 100);

struct KMeansRound {
    std::size_t k = 0;
    std::uint64_t seed = 0;
};

/// Symmetric co-clustering counts over R k-means rounds, packed as the
/// strict upper triangle. The diagonal is 0 by definition.
class ConsensusMatrix {
public:
    ConsensusMatrix() = default;
    explicit ConsensusMatrix(std::vector<std::string> users);

    std::size_t size() const { return users_.size(); }
    std::size_t rounds() const { return rounds_; }
    const std::vector<std::string>& users() const { return users_; }

    std::uint32_t at(std::size_t i, std::size_t j) const;

    /// Adds one round: +1 for every pair sharing a label.
    void accumulate(std::span<const int> labels);
    /// Element-wise sum of two matrices over the same users.
    void merge(const ConsensusMatrix& other);

    /// Labels of every accumulated round, in accumulation order.
    const std::vector<std::vector<int>>& round_labels() const { return round_labels_; }

    friend bool operator==(const ConsensusMatrix& a, const ConsensusMatrix& b) {
        return a.users_ == b.users_ && a.rounds_ == b.rounds_ && a.counts_ == b.counts_;
    }

private:
    std::size_t offset(std::size_t i, std::size_t j) const;

    std::vector<std::string> users_;
    std::size_t rounds_ = 0;
    std::vector<std::uint32_t> counts_;
    std::vector<std::vector<int>> round_labels_;
};

/// One k-means round per entry; rounds run concurrently and are merged in
/// order, so the result matches a sequential build.
ConsensusMatrix build_consensus(std::span<const UserFeatureVector> vectors, std::span<const KMeansRound> rounds);
/// Round r uses seed base_seed + r.
ConsensusMatrix build_consensus(std::span<const UserFeatureVector> vectors, std::span<const std::size_t> k_list,
                                std::uint64_t base_seed);

struct LangClusterParams {
    std::vector<std::size_t> k_list;
    std::size_t min_pts = 1;
    std::size_t eps = 1;
    std::uint64_t base_seed = 0;
};

struct LangClusterResult {
    LabelMap user_label;
    LangClusterParams params;
};

/// Plain DBSCAN over neighbour lists: core means at least min_pts
/// neighbours; seeds and border assignment follow index order.
std::vector<ClusterId> dbscan(const std::vector<std::vector<std::uint32_t>>& adjacency, std::size_t min_pts);

/// DBSCAN on the graph with i ~ j iff count(i, j) >= eps. Seeds are visited
/// in ascending user id. Throws ValidationError unless min_pts >= 1 and
/// 1 <= eps <= rounds.
LangClusterResult dbscan_consensus(const ConsensusMatrix& matrix, std::size_t min_pts, std::size_t eps);

struct DensityParams {
    std::size_t min_pts = 1;
    std::size_t eps = 1;

    friend bool operator==(const DensityParams&, const DensityParams&) = default;
};

/// min_pts = max(1, round(min_pts_frac * n_users)),
/// eps = max(1, ceil(eps_frac * rounds)).
DensityParams default_params(std::size_t n_users, std::size_t rounds, double min_pts_frac = 0.02,
                             double eps_frac = 0.8);

struct ProfileEntry {
    std::string lemma;
    double lift = 0.0;
    std::uint64_t in_cluster_count = 0;
};

struct ClusterProfile {
    std::map<ClusterId, std::vector<ProfileEntry>> clusters;  // entries by lift descending
    std::vector<std::string> warnings;
};

/// Lift of lemma h in cluster c: its share of c's retained-lemma usage over
/// its share of the whole data set's. NOISE is not profiled.
ClusterProfile profile_clusters(const LangClusterResult& result, const UserLemmaCounts& per_user,
                                const HashtagVocabulary& vocab, std::size_t top_n = 25);

}  // namespace simclust
