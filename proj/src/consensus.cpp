#include <algorithm>
#include <future>
#include <thread>

#include "simclust/error.hpp"
#include "simclust/langcluster.hpp"

namespace simclust {

ConsensusMatrix::ConsensusMatrix(std::vector<std::string> users)
    : users_(std::move(users)), counts_(users_.size() < 2 ? 0 : users_.size() * (users_.size() - 1) / 2, 0) {}

std::size_t ConsensusMatrix::offset(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    const std::size_t n = users_.size();
    return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

std::uint32_t ConsensusMatrix::at(std::size_t i, std::size_t j) const {
    if (i >= users_.size() || j >= users_.size()) throw ValidationError("ConsensusMatrix::at: index out of range");
    if (i == j) return 0;
    return counts_[offset(i, j)];
}

void ConsensusMatrix::accumulate(std::span<const int> labels) {
    if (labels.size() != users_.size()) throw ValidationError("ConsensusMatrix::accumulate: label count mismatch");
    std::vector<std::size_t> order(labels.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return labels[a] < labels[b]; });
    std::size_t start = 0;
    while (start < order.size()) {
        std::size_t end = start;
        while (end < order.size() && labels[order[end]] == labels[order[start]]) ++end;
        for (std::size_t a = start; a < end; ++a)
            for (std::size_t b = a + 1; b < end; ++b) ++counts_[offset(order[a], order[b])];
        start = end;
    }
    ++rounds_;
    round_labels_.emplace_back(labels.begin(), labels.end());
}

void ConsensusMatrix::merge(const ConsensusMatrix& other) {
    if (other.users_ != users_) throw ValidationError("ConsensusMatrix::merge: user sets differ");
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
    rounds_ += other.rounds_;
    round_labels_.insert(round_labels_.end(), other.round_labels_.begin(), other.round_labels_.end());
}

ConsensusMatrix build_consensus(std::span<const UserFeatureVector> vectors, std::span<const KMeansRound> rounds) {
    std::vector<std::string> users;
    users.reserve(vectors.size());
    for (const auto& v : vectors) users.push_back(v.user_id);
    for (const auto& r : rounds)
        if (r.k < 1 || r.k > vectors.size())
            throw ValidationError("build_consensus: k=" + std::to_string(r.k) + " outside [1, " +
                                  std::to_string(vectors.size()) + "]");

    ConsensusMatrix matrix(std::move(users));
    const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
    for (std::size_t start = 0; start < rounds.size(); start += workers) {
        const std::size_t end = std::min(rounds.size(), start + workers);
        std::vector<std::future<KMeansResult>> batch;
        for (std::size_t r = start; r < end; ++r) {
            batch.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred,
                                       [&vectors, round = rounds[r]] { return kmeans_cosine(vectors, round.k, round.seed); }));
        }
        for (auto& f : batch) matrix.accumulate(f.get().labels);
    }
    return matrix;
}

ConsensusMatrix build_consensus(std::span<const UserFeatureVector> vectors, std::span<const std::size_t> k_list,
                                std::uint64_t base_seed) {
    std::vector<KMeansRound> rounds;
    rounds.reserve(k_list.size());
    for (std::size_t r = 0; r < k_list.size(); ++r) rounds.push_back({k_list[r], base_seed + r});
    return build_consensus(vectors, rounds);
}

}  // namespace simclust
