#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace simclust {

/// Seeded random source whose output is identical on every platform.
///
/// std::mt19937_64 has a fully specified output sequence, but the standard
/// distributions do not, so the samplers below are written out here.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t uniform(std::uint64_t n);

    /// Uniform real in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Poisson variate by inversion; large means are split into chunks so
    /// exp(-mean) never underflows.
    std::uint64_t poisson(double mean);

    /// Index drawn from a cumulative weight table (last entry = total).
    std::size_t categorical(std::span<const double> cumulative);

private:
    std::mt19937_64 engine_;
};

}  // namespace simclust
