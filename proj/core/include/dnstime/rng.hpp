#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace dnstime {

// Deterministic random source. All sampling in the toolkit goes through this
// class; the distribution code is hand-rolled because the standard library's
// distribution objects are implementation-defined and would break byte-for-byte
// reproducibility across platforms. The underlying engine (mt19937_64) is fully
// specified by the standard.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform real in [0, 1) with 53 random bits.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Unbiased uniform integer in [0, n). Requires n >= 1.
    std::uint64_t next_below(std::uint64_t n);

    // Uniform integer in [lo, hi], inclusive on both ends.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

    // Uniform real in [lo, hi).
    double uniform_real(double lo, double hi) {
        return lo + (hi - lo) * next_unit();
    }

    // Poisson sample by inversion of uniforms (exact for lambda <= ~700; model
    // validation keeps lambda far below that).
    std::uint64_t poisson(double lambda);

    // In-place Fisher-Yates shuffle (std::shuffle is implementation-defined).
    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(next_below(i));
            using std::swap;
            swap(items[i - 1], items[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

// Stable derivation of per-stream seeds (trials, trees) from one master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

} // namespace dnstime
