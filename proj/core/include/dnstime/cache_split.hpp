#pragma once

#include "dnstime/types.hpp"

#include <cstdint>
#include <span>

namespace dnstime {

// Cache/resolve separation derived from the empty region between the cache
// mass near the ping value and the first resolution mass. When no empty gap
// exists the threshold falls back to three times the ping mean and
// low_confidence is set.
struct CacheSplit {
    std::int64_t threshold_us = 0;
    std::int64_t ping_mean_us = 0;
    std::int64_t gap_width_us = 0;
    bool low_confidence = false;

    bool operator==(const CacheSplit&) const = default;
};

// Finds the widest run of empty 0.5 ms bins whose upper edge lies above the
// ping mean, bounded by occupied bins on both sides, and places the threshold
// at its midpoint. Duplicating samples cannot move the threshold. DataError on
// an empty sample list; invalid_argument on a non-positive ping mean.
CacheSplit split_cache_resolve(std::span<const std::int64_t> rtts_us,
                               std::int64_t ping_mean_us);
CacheSplit split_cache_resolve(std::span<const Transaction> transactions,
                               std::int64_t ping_mean_us);

// True when the RTT falls on the cache side of the threshold.
inline bool is_cache_consistent(const CacheSplit& split, std::int64_t rtt_us) {
    return rtt_us < split.threshold_us;
}

} // namespace dnstime
