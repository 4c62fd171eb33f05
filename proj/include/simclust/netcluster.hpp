#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "simclust/corpus.hpp"
#include "simclust/labels.hpp"

namespace simclust {

struct RankedAuthor {
    std::string author_id;
    std::uint64_t retweet_count = 0;

    friend bool operator==(const RankedAuthor&, const RankedAuthor&) = default;
};

/// Top-k most retweeted authors. entries[r - 1] holds rank r.
struct InfluencerRanking {
    std::vector<RankedAuthor> entries;

    std::size_t size() const { return entries.size(); }
    bool empty() const { return entries.empty(); }
};

/// Ties are broken by author id ascending. A corpus without retweets yields
/// an empty ranking. Throws ValidationError when k is 0.
InfluencerRanking rank_influencers(const Corpus& corpus, std::size_t k);

/// count(rank) = b * rank^-m, fitted on log-log axes.
struct PowerLawFit {
    double m = 0.0;
    double b = 0.0;
    double r_squared = 0.0;
    /// Set when the fitted slope is not a decay (m <= 0), e.g. flat counts.
    bool degenerate = false;
};

/// Least squares of ln(count) on ln(rank) over 1-based ranks, skipping
/// zero counts. Throws DataError with fewer than three positive counts.
PowerLawFit fit_power_law(const InfluencerRanking& ranking);
PowerLawFit fit_power_law(std::span<const double> counts_by_rank);

enum class GraphStage { raw, normalized, thresholded };

std::string to_string(GraphStage stage);

struct WeightedEdge {
    std::uint32_t influencer = 0;  // index into RetweetGraph::influencers (rank - 1)
    double weight = 0.0;

    friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

/// A user node, or after aggregation, the superuser of every user that
/// retweeted exactly the influencer subset `key`.
struct SuperuserNode {
    std::vector<std::uint32_t> key;       // ascending influencer indices
    std::vector<std::string> members;     // ascending user ids
    std::vector<WeightedEdge> edges;      // ascending by influencer

    double weight_to(std::uint32_t influencer) const;
};

/// Bipartite user/superuser -> influencer graph.
///
/// Before aggregation every node holds exactly one member; aggregation
/// merges nodes with equal keys. Thresholding may drop edges but never
/// influencers, so isolated influencers stay visible downstream.
struct RetweetGraph {
    std::vector<std::string> influencers;  // rank order
    std::vector<SuperuserNode> nodes;
    GraphStage stage = GraphStage::raw;
    bool aggregated = false;

    std::size_t edge_count() const;
    double total_weight() const;
    /// Throws DataError when the graph has no edges.
    double max_weight() const;
    std::size_t member_count() const;
    /// Stable node identifier: the user id before aggregation, otherwise
    /// "su_" followed by the 1-based ranks of the key.
    std::string node_id(std::size_t node) const;
};

/// Per-user view: one node per user with at least one influencer retweet,
/// edge weight = number of such retweets. Throws ValidationError on an
/// empty ranking.
RetweetGraph build_edges(const Corpus& corpus, const InfluencerRanking& ranking);

/// Groups nodes by their exact influencer subset, summing edge weights and
/// merging member lists.
RetweetGraph aggregate_superusers(const RetweetGraph& graph);

/// Multiplies every edge to the rank-r influencer by log10(r + rank_offset).
/// rank_offset = 0 reproduces the literal "log of the rank" and zeroes rank 1.
RetweetGraph normalize_weights(const RetweetGraph& graph, const InfluencerRanking& ranking,
                               double rank_offset = 1.0);

/// Keeps edges with weight strictly greater than t and drops nodes left
/// without edges. Throws ValidationError when t < 0 or the graph is
/// already thresholded.
RetweetGraph apply_threshold(const RetweetGraph& graph, double t);

/// fraction * max edge weight.
double default_threshold(const RetweetGraph& graph, double fraction);

/// Upper bound on the number of distinct superusers, 2^n - 1, saturating
/// at the largest representable value.
double superuser_bound(std::size_t n_influencers);

/// Neighbor lists over influencer indices, ascending and without self loops.
using Adjacency = std::vector<std::vector<std::uint32_t>>;

/// i ~ j iff some node has edges to both.
Adjacency influencer_adjacency(const RetweetGraph& graph);

/// Density clustering in which already visited influencers do not count as
/// new neighbours when deciding whether a node is core.
///
/// Seeds are taken in index (rank) order. A node is core when the number of
/// its neighbours that are neither assigned to a cluster nor queued in the
/// current expansion is at least min_pts at the moment it is inspected.
/// Cluster ids are handed out from 0 in discovery order.
std::vector<ClusterId> modified_dbscan(const Adjacency& adjacency, std::size_t min_pts);

struct NetClusterParams {
    std::size_t min_pts = 2;
    double threshold = 0.0;
    bool normalized = true;
    double rank_offset = 1.0;
};

struct NetClusterResult {
    LabelMap influencer_label;
    LabelMap superuser_label;  // keyed by RetweetGraph::node_id
    LabelMap user_label;
    NetClusterParams params;
};

/// Influencer labels only. Requires a thresholded graph.
NetClusterResult modified_dbscan(const RetweetGraph& graph, std::size_t min_pts);

/// Each node joins the cluster receiving the largest share of its edge
/// weight (ties to the lower id); nodes touching only NOISE influencers are
/// NOISE. Users inherit their node's label.
NetClusterResult assign_superusers_and_users(const RetweetGraph& graph, NetClusterResult influencer_labels);

}  // namespace simclust
