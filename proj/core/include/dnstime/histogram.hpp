#pragma once

#include "dnstime/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace dnstime {

// Half-open, equal-width binning over [lo_us, hi_us). A sample exactly on a
// bin edge lands in the upper bin.
struct Binning {
    std::int64_t lo_us = 0;
    std::int64_t hi_us = 0;
    std::int64_t width_us = 0;

    int bin_count() const;
    std::optional<int> index_of(std::int64_t rtt_us) const; // nullopt when out of range
    std::int64_t bin_lo(int index) const { return lo_us + static_cast<std::int64_t>(index) * width_us; }
    std::int64_t bin_hi(int index) const { return bin_lo(index) + width_us; }

    void validate() const; // invalid_argument on hi <= lo or width <= 0

    // 10 ms bins over 0-1000 ms: the working resolution for whole-trace views.
    static Binning coarse();
    // 0.5 ms bins over 0-20 ms: the resolution for cache/attack overlap views.
    static Binning fine();

    bool operator==(const Binning&) const = default;
};

// Counts per bin. `total` is the number of samples offered, including those
// that fell outside the range, so sum(counts) <= total always holds.
struct Histogram {
    Binning binning;
    std::vector<std::int64_t> counts;
    std::int64_t total = 0;

    bool operator==(const Histogram&) const = default;
};

Histogram build_histogram(std::span<const std::int64_t> samples, const Binning& binning);
Histogram build_histogram(std::span<const Transaction> transactions, const Binning& binning);

// Empirical probability of one bin: counts[bin] / total. The probabilities of
// all bins sum to (in-range count)/total, which is exactly 1 when nothing fell
// outside the range. DataError when the histogram is empty; out-of-range bin
// index throws invalid_argument.
double rtt_probability(const Histogram& histogram, int bin);

// Bins whose count sits below `min_count`: thin evidence worth flagging when
// reading per-domain tables. Pure metadata; nothing downstream consumes it.
std::vector<bool> noise_flags(const Histogram& histogram, std::int64_t min_count = 30);

// CSV export: "#total=N" comment, then a bin_lo_us,bin_hi_us,count header and
// one row per bin. Byte-stable for identical histograms.
void write_histogram_csv(std::ostream& out, const Histogram& histogram);

} // namespace dnstime
