#include "batopt/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace batopt {

RandomStream::RandomStream(std::uint64_t seed) : seed_(seed), engine_(mix64(seed)) {}

double RandomStream::uniform01() {
    // Top 53 bits -> exact multiple of 2^-53, strictly below 1.
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform_in(double lo, double hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
        throw std::invalid_argument("uniform_in: require finite lo < hi");
    }
    const double value = lo + (hi - lo) * uniform01();
    // Rounding in the affine map can land exactly on hi for tiny widths.
    return value < hi ? value : std::nextafter(hi, lo);
}

double RandomStream::normal() { return normal_(engine_); }

std::size_t RandomStream::index_below(std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("index_below: n must be positive");
    }
    return static_cast<std::size_t>(uniform01() * static_cast<double>(n)) % n;
}

std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t run_index) noexcept {
    return mix64(mix64(master_seed) ^ (run_index * 0xd1b54a32d192ed03ULL + 1));
}

}  // namespace batopt
