#include <algorithm>
#include <cmath>
#include <numeric>

#include "simclust/error.hpp"
#include "simclust/langcluster.hpp"
#include "simclust/rng.hpp"

namespace simclust {

double cosine_distance(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
    if (a.empty() || b.empty()) return 1.0;
    std::size_t common = 0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) {
            ++common;
            ++i;
            ++j;
        } else if (a[i] < b[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    const double denom = std::sqrt(static_cast<double>(a.size())) * std::sqrt(static_cast<double>(b.size()));
    return 1.0 - static_cast<double>(common) / denom;
}

double cosine_distance(const UserFeatureVector& a, std::span<const double> centroid, double centroid_norm) {
    if (a.bits.empty() || !(centroid_norm > 0.0)) return 1.0;
    double dot = 0.0;
    for (auto b : a.bits) dot += centroid[b];
    return 1.0 - dot / (std::sqrt(static_cast<double>(a.bits.size())) * centroid_norm);
}

double cosine_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw ValidationError("cosine_distance: dimension mismatch");
    double dot = 0.0;
    double na = 0.0;
    double nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) return 1.0;
    return 1.0 - dot / (std::sqrt(na) * std::sqrt(nb));
}

namespace {

struct Centroids {
    std::size_t dim = 0;
    std::vector<double> values;  // k x dim, row major
    std::vector<double> norms;

    std::span<const double> row(std::size_t c) const { return {values.data() + c * dim, dim}; }
    std::span<double> row(std::size_t c) { return {values.data() + c * dim, dim}; }

    void set_to(std::size_t c, const UserFeatureVector& v) {
        auto r = row(c);
        std::fill(r.begin(), r.end(), 0.0);
        if (v.bits.empty()) {
            norms[c] = 0.0;
            return;
        }
        const double w = 1.0 / std::sqrt(static_cast<double>(v.bits.size()));
        for (auto b : v.bits) r[b] = w;
        norms[c] = 1.0;
    }

    void refresh_norm(std::size_t c) {
        double sq = 0.0;
        for (double x : row(c)) sq += x * x;
        norms[c] = std::sqrt(sq);
    }

    double distance(const UserFeatureVector& v, std::size_t c) const {
        return cosine_distance(v, row(c), norms[c]);
    }
};

}  // namespace

KMeansResult kmeans_cosine(std::span<const UserFeatureVector> vectors, std::size_t k, std::uint64_t seed,
                           std::size_t max_iter) {
    const std::size_t n = vectors.size();
    if (k < 1 || k > n) throw ValidationError("kmeans_cosine: k must satisfy 1 <= k <= n (k=" + std::to_string(k) +
                                              ", n=" + std::to_string(n) + ")");
    if (max_iter < 1) throw ValidationError("kmeans_cosine: max_iter must be >= 1");
    const std::size_t dim = vectors.front().dimension;
    for (const auto& v : vectors) {
        if (v.dimension != dim) throw ValidationError("kmeans_cosine: vectors differ in dimension");
        if (!v.bits.empty() && v.bits.back() >= dim) throw ValidationError("kmeans_cosine: bit outside dimension");
    }

    Centroids centroids;
    centroids.dim = dim;
    centroids.values.assign(k * dim, 0.0);
    centroids.norms.assign(k, 0.0);

    // partial Fisher-Yates: the first k slots become the initial centers
    Rng rng(seed);
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    for (std::size_t c = 0; c < k; ++c) {
        const std::size_t pick = c + static_cast<std::size_t>(rng.uniform(n - c));
        std::swap(pool[c], pool[pick]);
        centroids.set_to(c, vectors[pool[c]]);
    }

    KMeansResult result;
    result.labels.assign(n, -1);
    std::vector<int> next(n, 0);
    std::vector<std::size_t> members(k, 0);

    while (result.iterations < max_iter) {
        double objective = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            int best = 0;
            double best_dist = centroids.distance(vectors[i], 0);
            for (std::size_t c = 1; c < k; ++c) {
                const double d = centroids.distance(vectors[i], c);
                if (d < best_dist) {
                    best_dist = d;
                    best = static_cast<int>(c);
                }
            }
            next[i] = best;
            objective += best_dist;
        }
        ++result.iterations;
        result.objective.push_back(objective);
        if (next == result.labels) {
            result.converged = true;
            break;
        }
        result.labels = next;
        if (result.iterations == max_iter) break;

        // update: mean of unit-normalized members
        std::fill(centroids.values.begin(), centroids.values.end(), 0.0);
        std::fill(members.begin(), members.end(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& v = vectors[i];
            const auto c = static_cast<std::size_t>(result.labels[i]);
            ++members[c];
            if (v.bits.empty()) continue;
            const double w = 1.0 / std::sqrt(static_cast<double>(v.bits.size()));
            auto r = centroids.row(c);
            for (auto b : v.bits) r[b] += w;
        }
        std::vector<std::size_t> empty;
        for (std::size_t c = 0; c < k; ++c) {
            if (members[c] == 0) {
                empty.push_back(c);
                continue;
            }
            for (double& x : centroids.row(c)) x /= static_cast<double>(members[c]);
            centroids.refresh_norm(c);
        }

        // reseed emptied clusters one at a time with the worst-served vector
        std::vector<char> live(k, 1);
        for (auto c : empty) live[c] = 0;
        for (auto c : empty) {
            std::size_t farthest = 0;
            double farthest_dist = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                double nearest = 2.0;
                for (std::size_t o = 0; o < k; ++o)
                    if (live[o]) nearest = std::min(nearest, centroids.distance(vectors[i], o));
                if (nearest > farthest_dist) {
                    farthest_dist = nearest;
                    farthest = i;
                }
            }
            centroids.set_to(c, vectors[farthest]);
            live[c] = 1;
        }
    }
    return result;
}

}  // namespace simclust
