#pragma once

#include <cstdint>
#include <random>

namespace batopt {

/// Seedable uniform stream backing every stochastic decision of an optimizer run.
///
/// A stream is single-owner. Independent replicates get their own stream via
/// `derive_seed(master, index)`, so runs can execute concurrently and still be
/// reproducible bit-for-bit.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed);

    std::uint64_t seed() const noexcept { return seed_; }

    /// Next value in [0, 1), 53 bits of resolution.
    double uniform01();

    /// lo + (hi - lo) * uniform01(). Throws std::invalid_argument unless lo < hi, both finite.
    double uniform_in(double lo, double hi);

    /// Standard normal variate (used by the GA mutation operator).
    double normal();

    /// Uniform integer in [0, n). n must be positive.
    std::size_t index_below(std::size_t n);

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

/// SplitMix64 finalizer; decorrelates nearby integers.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed of replicate `run_index` under `master_seed`.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t run_index) noexcept;

}  // namespace batopt
