#include "dnstime/histogram.hpp"

#include "dnstime/error.hpp"

#include <ostream>
#include <stdexcept>

namespace dnstime {

int Binning::bin_count() const {
    // ceil((hi - lo) / width): the last bin may extend past hi.
    const std::int64_t span = hi_us - lo_us;
    return static_cast<int>((span + width_us - 1) / width_us);
}

std::optional<int> Binning::index_of(std::int64_t rtt_us) const {
    if (rtt_us < lo_us || rtt_us >= hi_us) return std::nullopt;
    return static_cast<int>((rtt_us - lo_us) / width_us);
}

void Binning::validate() const {
    if (width_us <= 0) throw std::invalid_argument("binning width must be > 0");
    if (hi_us <= lo_us) throw std::invalid_argument("binning range must satisfy hi > lo");
}

Binning Binning::coarse() { return {0, 1000000, 10000}; }
Binning Binning::fine() { return {0, 20000, 500}; }

Histogram build_histogram(std::span<const std::int64_t> samples, const Binning& binning) {
    binning.validate();
    Histogram histogram;
    histogram.binning = binning;
    histogram.counts.assign(static_cast<std::size_t>(binning.bin_count()), 0);
    histogram.total = static_cast<std::int64_t>(samples.size());
    for (const std::int64_t sample : samples) {
        if (const auto index = binning.index_of(sample)) {
            ++histogram.counts[static_cast<std::size_t>(*index)];
        }
    }
    return histogram;
}

Histogram build_histogram(std::span<const Transaction> transactions, const Binning& binning) {
    binning.validate();
    Histogram histogram;
    histogram.binning = binning;
    histogram.counts.assign(static_cast<std::size_t>(binning.bin_count()), 0);
    histogram.total = static_cast<std::int64_t>(transactions.size());
    for (const Transaction& tx : transactions) {
        if (const auto index = binning.index_of(tx.rtt_us)) {
            ++histogram.counts[static_cast<std::size_t>(*index)];
        }
    }
    return histogram;
}

double rtt_probability(const Histogram& histogram, int bin) {
    if (histogram.total == 0) throw DataError("probability of an empty histogram is undefined");
    if (bin < 0 || static_cast<std::size_t>(bin) >= histogram.counts.size()) {
        throw std::invalid_argument("bin index out of range");
    }
    return static_cast<double>(histogram.counts[static_cast<std::size_t>(bin)]) /
           static_cast<double>(histogram.total);
}

std::vector<bool> noise_flags(const Histogram& histogram, std::int64_t min_count) {
    std::vector<bool> flags(histogram.counts.size());
    for (std::size_t i = 0; i < histogram.counts.size(); ++i) {
        flags[i] = histogram.counts[i] > 0 && histogram.counts[i] < min_count;
    }
    return flags;
}

void write_histogram_csv(std::ostream& out, const Histogram& histogram) {
    out << "#total=" << histogram.total << "\n";
    out << "bin_lo_us,bin_hi_us,count\n";
    for (std::size_t i = 0; i < histogram.counts.size(); ++i) {
        const int index = static_cast<int>(i);
        out << histogram.binning.bin_lo(index) << "," << histogram.binning.bin_hi(index) << ","
            << histogram.counts[i] << "\n";
    }
}

} // namespace dnstime
