#pragma once

#include "dnstime/histogram.hpp"
#include "dnstime/types.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace dnstime {

// Bin-retention mask over a benign histogram: bit i is 1 exactly when bin i's
// share of the data strictly exceeds alpha. A response is accepted (classified
// benign) only if it lands in a retained bin, so raising alpha can only ever
// clear bits — masks are monotone non-increasing in alpha, bit by bit.
struct AlphaMask {
    double alpha = 0.0;
    Binning binning;
    std::vector<std::uint8_t> bits;

    bool operator==(const AlphaMask&) const = default;
};

// DataError on an empty histogram; invalid_argument on alpha outside [0, 1].
AlphaMask build_alpha_mask(const Histogram& benign, double alpha);

// Expected success rate of an attacker spraying uniformly across the bins:
// the mean of the mask bits.
double attack_success_rate(const AlphaMask& mask);

// Benign iff the sample lands in a retained bin; out-of-range is Attack.
Label classify_mask(std::int64_t rtt_us, const AlphaMask& mask);

// Same, with the caller restating the binning; ConfigError when it does not
// match the binning the mask was built over.
Label classify_mask(std::int64_t rtt_us, const AlphaMask& mask, const Binning& binning);

// Naive per-bin majority rule between a benign and an attack histogram over
// the same binning: a bin is retained when the benign count wins it outright.
// This is the intuitive threshold the learned classifiers are measured
// against. ConfigError when the binnings differ.
AlphaMask naive_cache_mask(const Histogram& benign, const Histogram& attack);

} // namespace dnstime
