#include "dnstime/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace dnstime {

std::uint64_t Rng::next_below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::next_below: n must be >= 1");
    if (n == 1) return 0;
    // Rejection sampling over a multiple of n keeps the result unbiased.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = next_u64();
    } while (x >= limit);
    return x % n;
}

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("Rng::uniform_int: lo must be <= hi");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) { // full 64-bit range
        return static_cast<std::int64_t>(next_u64());
    }
    return lo + static_cast<std::int64_t>(next_below(span));
}

std::uint64_t Rng::poisson(double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("Rng::poisson: lambda must be > 0");
    if (lambda > 700.0) throw std::invalid_argument("Rng::poisson: lambda too large for exact sampling");
    const double floor = std::exp(-lambda);
    std::uint64_t k = 0;
    double p = 1.0;
    do {
        ++k;
        p *= next_unit();
    } while (p > floor);
    return k - 1;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    // splitmix64 finalizer over a stream-offset state; stable across platforms.
    std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace dnstime
