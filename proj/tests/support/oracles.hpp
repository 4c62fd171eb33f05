#pragma once

// Brute-force reference implementations and random instance generators
// shared by the unit and acceptance suites. Everything here is written
// independently of the library code paths it checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "simclust/corpus.hpp"
#include "simclust/labels.hpp"

namespace oracle {

using Graph = std::vector<std::vector<std::uint32_t>>;

/// splitmix64; deliberately not the library's Rng.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    /// Uniform in [lo, hi]; modulo bias is irrelevant for test generation.
    std::size_t range(std::size_t lo, std::size_t hi) { return lo + next() % (hi - lo + 1); }
    double unit() { return static_cast<double>(next() >> 11) / 9007199254740992.0; }
    bool coin(double p) { return unit() < p; }

private:
    std::uint64_t state_;
};

/// Symmetric random graph without self loops, ascending neighbour lists.
inline Graph random_graph(Gen& g, std::size_t n, double p) {
    Graph adj(n);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j)
            if (g.coin(p)) {
                adj[i].push_back(j);
                adj[j].push_back(i);
            }
    for (auto& row : adj) std::sort(row.begin(), row.end());
    return adj;
}

/// Pair-counting ARI: enumerates every unordered pair of shared keys.
inline double pair_ari(const simclust::LabelMap& a, const simclust::LabelMap& b) {
    std::vector<std::pair<int, int>> items;
    for (const auto& [k, la] : a) {
        auto it = b.find(k);
        if (it != b.end()) items.emplace_back(la, it->second);
    }
    double ss = 0, sd = 0, ds = 0, dd = 0;
    for (std::size_t i = 0; i < items.size(); ++i)
        for (std::size_t j = i + 1; j < items.size(); ++j) {
            const bool sa = items[i].first == items[j].first;
            const bool sb = items[i].second == items[j].second;
            if (sa && sb) ++ss;
            else if (sa) ++sd;
            else if (sb) ++ds;
            else ++dd;
        }
    const double denom = (ss + sd) * (sd + dd) + (ss + ds) * (ds + dd);
    if (denom == 0) return 1.0;
    return 2.0 * (ss * dd - sd * ds) / denom;
}

/// Same partition up to renaming.
inline bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return false;
    std::map<int, int> ab, ba;
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto [it1, new1] = ab.emplace(a[i], b[i]);
        auto [it2, new2] = ba.emplace(b[i], a[i]);
        if (it1->second != b[i] || it2->second != a[i]) return false;
    }
    return true;
}

/// Standard DBSCAN clusters as density-reachable sets: core nodes (degree >=
/// min_pts) are grouped by fixpoint closure over core-core edges; each group
/// plus all neighbours of its members forms one reachable set. Border nodes
/// may appear in several sets.
inline std::vector<std::set<std::uint32_t>> reachable_sets(const Graph& adj, std::size_t min_pts) {
    const std::size_t n = adj.size();
    std::vector<bool> core(n);
    for (std::size_t i = 0; i < n; ++i) core[i] = adj[i].size() >= min_pts;
    // component id by repeated min-label propagation
    std::vector<std::size_t> comp(n);
    std::iota(comp.begin(), comp.end(), 0);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (!core[i]) continue;
            for (auto j : adj[i])
                if (core[j] && comp[j] < comp[i]) {
                    comp[i] = comp[j];
                    changed = true;
                }
        }
    }
    std::map<std::size_t, std::set<std::uint32_t>> sets;
    for (std::uint32_t i = 0; i < n; ++i) {
        if (!core[i]) continue;
        auto& s = sets[comp[i]];
        s.insert(i);
        for (auto j : adj[i]) s.insert(j);
    }
    std::vector<std::set<std::uint32_t>> out;
    for (auto& [c, s] : sets) out.push_back(std::move(s));
    return out;
}

/// Reference standard DBSCAN labels with the seed-order conventions: core
/// groups are numbered by their smallest member, a border node takes the
/// first group (in that numbering) with a core neighbour.
inline std::vector<int> reference_dbscan(const Graph& adj, std::size_t min_pts) {
    const std::size_t n = adj.size();
    std::vector<bool> core(n);
    for (std::size_t i = 0; i < n; ++i) core[i] = adj[i].size() >= min_pts;
    std::vector<std::size_t> comp(n);
    std::iota(comp.begin(), comp.end(), 0);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (!core[i]) continue;
            for (auto j : adj[i])
                if (core[j] && comp[j] < comp[i]) {
                    comp[i] = comp[j];
                    changed = true;
                }
        }
    }
    std::map<std::size_t, int> id_of;
    for (std::size_t i = 0; i < n; ++i)
        if (core[i] && !id_of.count(comp[i])) id_of.emplace(comp[i], static_cast<int>(id_of.size()));
    std::vector<int> label(n, simclust::kNoise);
    for (std::size_t i = 0; i < n; ++i) {
        if (core[i]) {
            label[i] = id_of.at(comp[i]);
            continue;
        }
        int best = -1;
        for (auto j : adj[i])
            if (core[j]) {
                const int c = id_of.at(comp[j]);
                if (best < 0 || c < best) best = c;
            }
        if (best >= 0) label[i] = best;
    }
    return label;
}

/// Ordinary least squares of ln(y) on ln(rank), ranks 1-based, in long
/// double via centered sums. Returns {m, b}.
inline std::pair<double, double> loglog_regression(const std::vector<double>& counts) {
    long double sx = 0, sy = 0;
    const long double n = static_cast<long double>(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
        sx += std::log(static_cast<long double>(i + 1));
        sy += std::log(static_cast<long double>(counts[i]));
    }
    const long double mx = sx / n, my = sy / n;
    long double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const long double dx = std::log(static_cast<long double>(i + 1)) - mx;
        sxy += dx * (std::log(static_cast<long double>(counts[i])) - my);
        sxx += dx * dx;
    }
    const long double slope = sxy / sxx;
    return {static_cast<double>(-slope), static_cast<double>(std::exp(my - slope * mx))};
}

/// Small random corpus: `users` users retweeting among `influencers`
/// authors, plus some original posts and hashtags.
inline simclust::Corpus random_corpus(Gen& g, std::size_t users, std::size_t influencers,
                                      std::size_t max_retweets = 6) {
    std::vector<simclust::TweetRecord> records;
    std::size_t next_id = 0;
    auto id = [&] { return "t" + std::to_string(next_id++); };
    for (std::size_t i = 0; i < influencers; ++i) {
        simclust::TweetRecord r;
        r.tweet_id = id();
        r.author_id = "i" + std::to_string(i);
        r.author_handle = "Inf" + std::to_string(i);
        r.created_at = static_cast<std::int64_t>(g.range(0, 1000));
        r.text = "post";
        records.push_back(r);
    }
    for (std::size_t u = 0; u < users; ++u) {
        const std::size_t n_rt = g.range(0, max_retweets);
        for (std::size_t k = 0; k < n_rt; ++k) {
            simclust::TweetRecord r;
            r.tweet_id = id();
            r.author_id = "u" + std::to_string(u);
            r.author_handle = "user" + std::to_string(u);
            r.created_at = static_cast<std::int64_t>(g.range(0, 1000));
            r.retweet_of = "i" + std::to_string(g.range(0, influencers - 1));
            r.text = "RT";
            if (g.coin(0.3)) r.hashtags.push_back("Tag" + std::to_string(g.range(0, 5)));
            records.push_back(std::move(r));
        }
    }
    return simclust::Corpus::from_records(std::move(records));
}

}  // namespace oracle
