#include "simclust/langcluster.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <istream>
#include <numeric>
#include <set>
#include <sstream>

#include "simclust/error.hpp"
#include "simclust/text.hpp"

namespace simclust {

// ---------------------------------------------------------------------------
// Lexicons

void LemmaMap::add(std::string_view surface, std::string_view lemma) {
    table_[text::to_lower(surface)] = text::to_lower(lemma);
}

std::string LemmaMap::lookup(std::string_view token) const {
    std::string lowered = text::to_lower(token);
    auto it = table_.find(lowered);
    return it == table_.end() ? lowered : it->second;
}

LemmaMap LemmaMap::parse(std::istream& in) {
    LemmaMap map;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto body = text::trim(line);
        if (body.empty() || body.front() == '#') continue;
        const auto tab = body.find('\t');
        if (tab == std::string_view::npos)
            throw ValidationError("lemma table line " + std::to_string(line_no) + ": expected surface<TAB>lemma");
        const auto surface = text::trim(body.substr(0, tab));
        const auto lemma = text::trim(body.substr(tab + 1));
        if (surface.empty() || lemma.empty())
            throw ValidationError("lemma table line " + std::to_string(line_no) + ": empty column");
        map.add(surface, lemma);
    }
    return map;
}

LemmaMap LemmaMap::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open lemma table: " + path.string());
    return parse(in);
}

void StopWordList::add(std::string_view word) { words_.insert(text::to_lower(word)); }

bool StopWordList::contains(std::string_view token) const { return words_.count(text::to_lower(token)) > 0; }

StopWordList StopWordList::parse(std::istream& in) {
    StopWordList list;
    std::string line;
    while (std::getline(in, line)) {
        std::string_view body = line;
        if (auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
        body = text::trim(body);
        if (!body.empty()) list.add(body);
    }
    return list;
}

StopWordList StopWordList::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open stop-word list: " + path.string());
    return parse(in);
}

// ---------------------------------------------------------------------------
// Counting and vocabulary

UserLemmaCounts normalize_hashtags(const Corpus& corpus, const LemmaMap& lemmas, const StopWordList& stops) {
    UserLemmaCounts out;
    for (const auto& r : corpus.records()) {
        for (const auto& tag : r.hashtags) {
            std::string lemma = lemmas.lookup(tag);
            if (lemma.empty() || stops.contains(lemma)) continue;
            ++out[r.author_id][lemma];
        }
    }
    return out;
}

LemmaCounts total_counts(const UserLemmaCounts& per_user) {
    LemmaCounts totals;
    for (const auto& [user, counts] : per_user)
        for (const auto& [lemma, n] : counts) totals[lemma] += n;
    return totals;
}

std::uint64_t nearest_rank_quantile(std::span<const std::uint64_t> ascending, double q) {
    if (ascending.empty()) throw DataError("nearest_rank_quantile: empty input");
    const double n = static_cast<double>(ascending.size());
    // the small slack keeps q * N = 97.00000000000001 at rank 97
    auto rank = static_cast<std::int64_t>(std::ceil(q * n - 1e-9));
    rank = std::clamp<std::int64_t>(rank, 1, static_cast<std::int64_t>(ascending.size()));
    return ascending[static_cast<std::size_t>(rank - 1)];
}

std::optional<std::size_t> HashtagVocabulary::index_of(std::string_view lemma) const {
    auto it = std::lower_bound(retained.begin(), retained.end(), lemma);
    if (it == retained.end() || *it != lemma) return std::nullopt;
    return static_cast<std::size_t>(it - retained.begin());
}

HashtagVocabulary build_vocabulary(const LemmaCounts& totals, double q_low, double q_high) {
    if (totals.empty()) throw DataError("build_vocabulary: no lemmas");
    if (!(q_low > 0.0 && q_low <= 1.0) || !(q_high > 0.0 && q_high <= 1.0) || q_low > q_high)
        throw ValidationError("build_vocabulary: quantiles must satisfy 0 < q_low <= q_high <= 1");

    std::vector<std::uint64_t> values;
    values.reserve(totals.size());
    for (const auto& [lemma, n] : totals) values.push_back(n);
    std::sort(values.begin(), values.end());

    HashtagVocabulary vocab;
    vocab.total_counts = totals;
    vocab.q_low_value = nearest_rank_quantile(values, q_low);
    vocab.q_high_value = nearest_rank_quantile(values, q_high);
    for (const auto& [lemma, n] : totals)
        if (n >= 2 && n >= vocab.q_low_value && n <= vocab.q_high_value) vocab.retained.push_back(lemma);
    return vocab;
}

std::vector<double> UserFeatureVector::dense() const {
    std::vector<double> v(dimension, 0.0);
    for (auto b : bits) v.at(b) = 1.0;
    return v;
}

FeatureVectorSet build_feature_vectors(const UserLemmaCounts& per_user, const HashtagVocabulary& vocab,
                                       std::uint64_t per_tag_min, std::uint64_t per_user_min) {
    if (vocab.retained.empty()) throw DataError("build_feature_vectors: vocabulary is empty");
    FeatureVectorSet out;
    for (const auto& [user, counts] : per_user) {
        ++out.users_considered;
        std::uint64_t usage = 0;
        UserFeatureVector v;
        v.user_id = user;
        v.dimension = vocab.dimension();
        for (const auto& [lemma, n] : counts) {
            auto idx = vocab.index_of(lemma);
            if (!idx) continue;
            usage += n;
            if (n > per_tag_min) v.bits.push_back(static_cast<std::uint32_t>(*idx));
        }
        if (usage <= per_user_min) continue;
        ++out.users_above_min;
        if (v.bits.empty()) {
            ++out.users_all_zero;
            continue;
        }
        std::sort(v.bits.begin(), v.bits.end());
        out.vectors.push_back(std::move(v));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Density clustering

std::vector<ClusterId> dbscan(const std::vector<std::vector<std::uint32_t>>& adjacency, std::size_t min_pts) {
    if (min_pts < 1) throw ValidationError("dbscan: min_pts must be >= 1");
    constexpr ClusterId kUnassigned = -100;
    const std::size_t n = adjacency.size();
    std::vector<ClusterId> label(n, kUnassigned);
    ClusterId next_id = 0;
    std::deque<std::uint32_t> queue;
    for (std::size_t p = 0; p < n; ++p) {
        if (label[p] != kUnassigned) continue;
        if (adjacency[p].size() < min_pts) {
            label[p] = kNoise;  // may still become a border point later
            continue;
        }
        const ClusterId cluster = next_id++;
        label[p] = cluster;
        queue.assign(adjacency[p].begin(), adjacency[p].end());
        while (!queue.empty()) {
            const auto q = queue.front();
            queue.pop_front();
            if (label[q] == kNoise) {
                label[q] = cluster;
                continue;
            }
            if (label[q] != kUnassigned) continue;
            label[q] = cluster;
            if (adjacency[q].size() >= min_pts) queue.insert(queue.end(), adjacency[q].begin(), adjacency[q].end());
        }
    }
    return label;
}

LangClusterResult dbscan_consensus(const ConsensusMatrix& matrix, std::size_t min_pts, std::size_t eps) {
    if (min_pts < 1) throw ValidationError("dbscan_consensus: min_pts must be >= 1");
    if (eps < 1 || eps > matrix.rounds())
        throw ValidationError("dbscan_consensus: eps must lie in [1, rounds]");

    const std::size_t n = matrix.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return matrix.users()[a] < matrix.users()[b]; });

    std::vector<std::vector<std::uint32_t>> adjacency(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (a != b && matrix.at(order[a], order[b]) >= eps) adjacency[a].push_back(static_cast<std::uint32_t>(b));

    const auto labels = dbscan(adjacency, min_pts);
    LangClusterResult result;
    result.params.min_pts = min_pts;
    result.params.eps = eps;
    for (std::size_t a = 0; a < n; ++a) result.user_label[matrix.users()[order[a]]] = labels[a];
    return result;
}

DensityParams default_params(std::size_t n_users, std::size_t rounds, double min_pts_frac, double eps_frac) {
    if (n_users < 1 || rounds < 1) throw ValidationError("default_params: n_users and rounds must be >= 1");
    if (!(min_pts_frac > 0.0 && min_pts_frac < 1.0) || !(eps_frac > 0.0 && eps_frac < 1.0))
        throw ValidationError("default_params: fractions must lie in (0,1)");
    DensityParams p;
    p.min_pts = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(min_pts_frac * static_cast<double>(n_users))));
    const double eps = std::ceil(eps_frac * static_cast<double>(rounds) - 1e-9);
    p.eps = std::max<std::size_t>(1, static_cast<std::size_t>(eps));
    return p;
}

// ---------------------------------------------------------------------------
// Profiles

ClusterProfile profile_clusters(const LangClusterResult& result, const UserLemmaCounts& per_user,
                                const HashtagVocabulary& vocab, std::size_t top_n) {
    ClusterProfile profile;
    std::map<std::string, std::uint64_t> overall;
    std::uint64_t overall_total = 0;
    for (const auto& [user, counts] : per_user) {
        for (const auto& [lemma, n] : counts) {
            if (!vocab.index_of(lemma)) continue;
            overall[lemma] += n;
            overall_total += n;
        }
    }

    std::map<ClusterId, std::map<std::string, std::uint64_t>> in_cluster;
    std::map<ClusterId, std::uint64_t> cluster_total;
    for (const auto& [user, label] : result.user_label) {
        if (label < 0) continue;
        cluster_total.try_emplace(label, 0);
        auto it = per_user.find(user);
        if (it == per_user.end()) continue;
        for (const auto& [lemma, n] : it->second) {
            if (!vocab.index_of(lemma)) continue;
            in_cluster[label][lemma] += n;
            cluster_total[label] += n;
        }
    }

    for (const auto& [cluster, total] : cluster_total) {
        if (total == 0) {
            profile.warnings.push_back("cluster " + std::to_string(cluster) + " has no retained hashtag usage; skipped");
            continue;
        }
        std::vector<ProfileEntry> entries;
        for (const auto& [lemma, n] : in_cluster[cluster]) {
            const double share_in = static_cast<double>(n) / static_cast<double>(total);
            const double share_all = static_cast<double>(overall.at(lemma)) / static_cast<double>(overall_total);
            entries.push_back({lemma, share_in / share_all, n});
        }
        std::stable_sort(entries.begin(), entries.end(),
                         [](const ProfileEntry& a, const ProfileEntry& b) { return a.lift > b.lift; });
        if (entries.size() > top_n) entries.resize(top_n);
        profile.clusters.emplace(cluster, std::move(entries));
    }
    return profile;
}

}  // namespace simclust
