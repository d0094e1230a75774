#include "dnstime/cache_split.hpp"

#include "dnstime/error.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace dnstime {

namespace {

constexpr std::int64_t kGapBinUs = 500;

CacheSplit split_impl(std::span<const std::int64_t> rtts_us, std::int64_t ping_mean_us) {
    if (rtts_us.empty()) throw DataError("cannot split an empty sample list");
    if (ping_mean_us <= 0) throw std::invalid_argument("ping mean must be > 0");

    const std::int64_t max_rtt = *std::max_element(rtts_us.begin(), rtts_us.end());
    const std::size_t bin_count = static_cast<std::size_t>(max_rtt / kGapBinUs) + 1;
    std::vector<std::int64_t> counts(bin_count, 0);
    for (const std::int64_t rtt : rtts_us) {
        if (rtt >= 0) counts[static_cast<std::size_t>(rtt / kGapBinUs)]++;
    }

    // Scan for maximal empty runs bounded by occupied bins on both sides. Only
    // the emptiness pattern matters, so duplicated samples cannot move the
    // result. A run qualifies when its upper edge clears the ping mean: the
    // gap must separate the cache mass from resolution mass, not sit inside
    // the cache itself.
    std::int64_t best_width = 0;
    std::size_t best_start = 0;
    bool found = false;
    std::size_t i = 0;
    while (i < bin_count && counts[i] == 0) ++i; // skip leading emptiness
    while (i < bin_count) {
        while (i < bin_count && counts[i] != 0) ++i;
        const std::size_t run_start = i;
        while (i < bin_count && counts[i] == 0) ++i;
        if (i >= bin_count) break; // trailing emptiness, not a bounded gap
        const std::size_t run_end = i; // one past the last empty bin
        const std::int64_t upper_edge_us = static_cast<std::int64_t>(run_end) * kGapBinUs;
        if (upper_edge_us <= ping_mean_us) continue;
        const std::int64_t width = static_cast<std::int64_t>(run_end - run_start) * kGapBinUs;
        if (width > best_width) {
            best_width = width;
            best_start = run_start;
            found = true;
        }
    }

    CacheSplit split;
    split.ping_mean_us = ping_mean_us;
    if (!found) {
        split.threshold_us = ping_mean_us * 3;
        split.gap_width_us = 0;
        split.low_confidence = true;
        return split;
    }
    const std::int64_t gap_lo = static_cast<std::int64_t>(best_start) * kGapBinUs;
    // The midpoint can graze the ping mean when the gap straddles it; the
    // split type promises threshold > ping, so nudge up in that corner case.
    split.threshold_us = std::max(gap_lo + best_width / 2, ping_mean_us + 1);
    split.gap_width_us = best_width;
    split.low_confidence = false;
    return split;
}

} // namespace

CacheSplit split_cache_resolve(std::span<const std::int64_t> rtts_us,
                               std::int64_t ping_mean_us) {
    return split_impl(rtts_us, ping_mean_us);
}

CacheSplit split_cache_resolve(std::span<const Transaction> transactions,
                               std::int64_t ping_mean_us) {
    std::vector<std::int64_t> rtts;
    rtts.reserve(transactions.size());
    for (const Transaction& tx : transactions) rtts.push_back(tx.rtt_us);
    return split_impl(rtts, ping_mean_us);
}

} // namespace dnstime
