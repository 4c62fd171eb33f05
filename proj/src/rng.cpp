#include "simclust/rng.hpp"

#include <algorithm>
#include <cmath>

#include "simclust/error.hpp"

namespace simclust {

std::uint64_t Rng::uniform(std::uint64_t n) {
    if (n == 0) throw ValidationError("Rng::uniform: empty range");
    // Rejection sampling on the top of the 64-bit range keeps it unbiased.
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % n);
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % n;
}

namespace {

std::uint64_t poisson_by_inversion(Rng& rng, double mean) {
    const double u = rng.uniform01();
    double p = std::exp(-mean);
    double cdf = p;
    std::uint64_t k = 0;
    while (u >= cdf) {
        ++k;
        p *= mean / static_cast<double>(k);
        const double next = cdf + p;
        if (next == cdf) break;  // tail exhausted in double precision
        cdf = next;
    }
    return k;
}

}  // namespace

std::uint64_t Rng::poisson(double mean) {
    if (!(mean >= 0.0) || !std::isfinite(mean)) throw ValidationError("Rng::poisson: mean must be finite and >= 0");
    constexpr double kChunk = 200.0;
    std::uint64_t total = 0;
    while (mean > kChunk) {
        total += poisson_by_inversion(*this, kChunk);
        mean -= kChunk;
    }
    if (mean > 0.0) total += poisson_by_inversion(*this, mean);
    return total;
}

std::size_t Rng::categorical(std::span<const double> cumulative) {
    if (cumulative.empty() || !(cumulative.back() > 0.0)) throw ValidationError("Rng::categorical: empty weight table");
    const double u = uniform01() * cumulative.back();
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) --it;
    return static_cast<std::size_t>(it - cumulative.begin());
}

}  // namespace simclust
