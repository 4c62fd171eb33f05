#include "simclust/netcluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>

#include "simclust/error.hpp"

namespace simclust {

InfluencerRanking rank_influencers(const Corpus& corpus, std::size_t k) {
    if (k == 0) throw ValidationError("rank_influencers: k must be >= 1");
    InfluencerRanking ranking;
    for (auto& [id, n] : most_retweeted(corpus, k)) ranking.entries.push_back({std::move(id), n});
    return ranking;
}

PowerLawFit fit_power_law(std::span<const double> counts_by_rank) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t i = 0; i < counts_by_rank.size(); ++i) {
        if (!(counts_by_rank[i] > 0.0)) continue;
        xs.push_back(std::log(static_cast<double>(i + 1)));
        ys.push_back(std::log(counts_by_rank[i]));
    }
    if (xs.size() < 3) throw DataError("fit_power_law: need at least three positive counts");

    const double n = static_cast<double>(xs.size());
    double mean_x = 0.0;
    double mean_y = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mean_x += xs[i];
        mean_y += ys[i];
    }
    mean_x /= n;
    mean_y /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mean_x;
        const double dy = ys[i] - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    const double slope = sxy / sxx;
    const double intercept = mean_y - slope * mean_x;

    double ss_res = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (intercept + slope * xs[i]);
        ss_res += r * r;
    }

    PowerLawFit fit;
    fit.m = -slope;
    fit.b = std::exp(intercept);
    if (syy > 0.0) {
        fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
    } else {
        fit.r_squared = 1.0;  // flat data is fitted exactly by a zero slope
    }
    fit.degenerate = !(fit.m > 0.0);
    return fit;
}

PowerLawFit fit_power_law(const InfluencerRanking& ranking) {
    std::vector<double> counts;
    counts.reserve(ranking.size());
    for (const auto& e : ranking.entries) counts.push_back(static_cast<double>(e.retweet_count));
    return fit_power_law(counts);
}

std::string to_string(GraphStage stage) {
    switch (stage) {
        case GraphStage::raw: return "raw";
        case GraphStage::normalized: return "normalized";
        case GraphStage::thresholded: return "thresholded";
    }
    return "unknown";
}

double SuperuserNode::weight_to(std::uint32_t influencer) const {
    auto it = std::lower_bound(edges.begin(), edges.end(), influencer,
                               [](const WeightedEdge& e, std::uint32_t v) { return e.influencer < v; });
    return (it != edges.end() && it->influencer == influencer) ? it->weight : 0.0;
}

std::size_t RetweetGraph::edge_count() const {
    std::size_t n = 0;
    for (const auto& node : nodes) n += node.edges.size();
    return n;
}

double RetweetGraph::total_weight() const {
    double sum = 0.0;
    for (const auto& node : nodes)
        for (const auto& e : node.edges) sum += e.weight;
    return sum;
}

double RetweetGraph::max_weight() const {
    double best = -std::numeric_limits<double>::infinity();
    bool any = false;
    for (const auto& node : nodes) {
        for (const auto& e : node.edges) {
            best = std::max(best, e.weight);
            any = true;
        }
    }
    if (!any) throw DataError("graph has no edges");
    return best;
}

std::size_t RetweetGraph::member_count() const {
    std::size_t n = 0;
    for (const auto& node : nodes) n += node.members.size();
    return n;
}

std::string RetweetGraph::node_id(std::size_t node) const {
    const auto& n = nodes.at(node);
    if (!aggregated) return n.members.at(0);
    std::string id = "su";
    for (auto idx : n.key) id += "_" + std::to_string(idx + 1);
    return id;
}

RetweetGraph build_edges(const Corpus& corpus, const InfluencerRanking& ranking) {
    if (ranking.empty()) throw ValidationError("build_edges: ranking is empty");
    RetweetGraph graph;
    std::unordered_map<std::string, std::uint32_t> index;
    for (std::size_t i = 0; i < ranking.size(); ++i) {
        graph.influencers.push_back(ranking.entries[i].author_id);
        index.emplace(ranking.entries[i].author_id, static_cast<std::uint32_t>(i));
    }

    std::map<std::string, std::map<std::uint32_t, double>> per_user;
    for (const auto& r : corpus.records()) {
        if (!r.retweet_of) continue;
        auto it = index.find(*r.retweet_of);
        if (it == index.end()) continue;
        per_user[r.author_id][it->second] += 1.0;
    }

    graph.nodes.reserve(per_user.size());
    for (auto& [user, targets] : per_user) {
        SuperuserNode node;
        node.members.push_back(user);
        for (const auto& [inf, w] : targets) {
            node.key.push_back(inf);
            node.edges.push_back({inf, w});
        }
        graph.nodes.push_back(std::move(node));
    }
    return graph;
}

RetweetGraph aggregate_superusers(const RetweetGraph& graph) {
    std::map<std::vector<std::uint32_t>, SuperuserNode> groups;
    for (const auto& node : graph.nodes) {
        auto& group = groups[node.key];
        if (group.key.empty()) {
            group.key = node.key;
            for (auto inf : node.key) group.edges.push_back({inf, 0.0});
        }
        group.members.insert(group.members.end(), node.members.begin(), node.members.end());
        for (const auto& e : node.edges) {
            auto it = std::lower_bound(group.edges.begin(), group.edges.end(), e.influencer,
                                       [](const WeightedEdge& x, std::uint32_t v) { return x.influencer < v; });
            if (it == group.edges.end() || it->influencer != e.influencer)
                throw DataError("aggregate_superusers: edge outside its node key");
            it->weight += e.weight;
        }
    }

    RetweetGraph out;
    out.influencers = graph.influencers;
    out.stage = graph.stage;
    out.aggregated = true;
    out.nodes.reserve(groups.size());
    for (auto& [key, group] : groups) {
        std::sort(group.members.begin(), group.members.end());
        out.nodes.push_back(std::move(group));
    }
    return out;
}

RetweetGraph normalize_weights(const RetweetGraph& graph, const InfluencerRanking& ranking, double rank_offset) {
    if (graph.stage != GraphStage::raw) throw ValidationError("normalize_weights: graph must be at stage raw");
    if (!(rank_offset >= 0.0) || !std::isfinite(rank_offset))
        throw ValidationError("normalize_weights: rank offset must be finite and >= 0");
    if (graph.influencers.size() != ranking.size())
        throw DataError("normalize_weights: graph and ranking disagree on the influencer set");
    for (std::size_t i = 0; i < ranking.size(); ++i)
        if (graph.influencers[i] != ranking.entries[i].author_id)
            throw DataError("normalize_weights: influencer '" + graph.influencers[i] + "' not at its ranked position");

    std::vector<double> factor(ranking.size());
    for (std::size_t i = 0; i < factor.size(); ++i) factor[i] = std::log10(static_cast<double>(i + 1) + rank_offset);

    RetweetGraph out = graph;
    for (auto& node : out.nodes) {
        for (auto& e : node.edges) {
            if (e.influencer >= factor.size()) throw DataError("normalize_weights: unknown influencer index");
            e.weight *= factor[e.influencer];
        }
    }
    out.stage = GraphStage::normalized;
    return out;
}

RetweetGraph apply_threshold(const RetweetGraph& graph, double t) {
    if (!(t >= 0.0)) throw ValidationError("apply_threshold: threshold must be >= 0");
    if (graph.stage == GraphStage::thresholded) throw ValidationError("apply_threshold: graph is already thresholded");
    RetweetGraph out;
    out.influencers = graph.influencers;
    out.aggregated = graph.aggregated;
    out.stage = GraphStage::thresholded;
    for (const auto& node : graph.nodes) {
        SuperuserNode kept;
        for (const auto& e : node.edges)
            if (e.weight > t) kept.edges.push_back(e);
        if (kept.edges.empty()) continue;
        kept.key = node.key;
        kept.members = node.members;
        out.nodes.push_back(std::move(kept));
    }
    return out;
}

double default_threshold(const RetweetGraph& graph, double fraction) {
    if (!(fraction > 0.0 && fraction < 1.0)) throw ValidationError("default_threshold: fraction must lie in (0,1)");
    return fraction * graph.max_weight();
}

double superuser_bound(std::size_t n_influencers) {
    if (n_influencers >= 1024) return std::numeric_limits<double>::max();
    return std::ldexp(1.0, static_cast<int>(n_influencers)) - 1.0;
}

Adjacency influencer_adjacency(const RetweetGraph& graph) {
    const std::size_t n = graph.influencers.size();
    std::vector<std::vector<char>> linked(n, std::vector<char>(n, 0));
    for (const auto& node : graph.nodes) {
        for (std::size_t a = 0; a < node.edges.size(); ++a) {
            for (std::size_t b = a + 1; b < node.edges.size(); ++b) {
                const auto i = node.edges[a].influencer;
                const auto j = node.edges[b].influencer;
                if (i == j) continue;
                linked[i][j] = 1;
                linked[j][i] = 1;
            }
        }
    }
    Adjacency adj(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (linked[i][j]) adj[i].push_back(static_cast<std::uint32_t>(j));
    return adj;
}

NetClusterResult modified_dbscan(const RetweetGraph& graph, std::size_t min_pts) {
    if (graph.stage != GraphStage::thresholded) throw ValidationError("modified_dbscan: graph must be thresholded");
    const auto labels = modified_dbscan(influencer_adjacency(graph), min_pts);
    NetClusterResult result;
    result.params.min_pts = min_pts;
    for (std::size_t i = 0; i < labels.size(); ++i) result.influencer_label[graph.influencers[i]] = labels[i];
    return result;
}

NetClusterResult assign_superusers_and_users(const RetweetGraph& graph, NetClusterResult result) {
    std::vector<ClusterId> influencer_label(graph.influencers.size(), kNoise);
    for (std::size_t i = 0; i < graph.influencers.size(); ++i) {
        auto it = result.influencer_label.find(graph.influencers[i]);
        if (it == result.influencer_label.end())
            throw DataError("assign_superusers_and_users: no label for influencer " + graph.influencers[i]);
        influencer_label[i] = it->second;
    }

    result.superuser_label.clear();
    result.user_label.clear();
    for (std::size_t n = 0; n < graph.nodes.size(); ++n) {
        const auto& node = graph.nodes[n];
        std::map<ClusterId, double> weight_into;
        for (const auto& e : node.edges) {
            const ClusterId c = influencer_label.at(e.influencer);
            if (c >= 0) weight_into[c] += e.weight;
        }
        ClusterId best = kNoise;
        double best_weight = -1.0;
        for (const auto& [c, w] : weight_into) {  // ascending ids, so strict > keeps the lower id on ties
            if (w > best_weight) {
                best = c;
                best_weight = w;
            }
        }
        result.superuser_label[graph.node_id(n)] = best;
        for (const auto& user : node.members) result.user_label[user] = best;
    }
    return result;
}

}  // namespace simclust
