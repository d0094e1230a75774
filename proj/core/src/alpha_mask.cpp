#include "dnstime/alpha_mask.hpp"

#include "dnstime/error.hpp"

#include <stdexcept>

namespace dnstime {

AlphaMask build_alpha_mask(const Histogram& benign, double alpha) {
    if (benign.total == 0) throw DataError("cannot build a mask from an empty histogram");
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("alpha must lie in [0, 1]");
    }
    AlphaMask mask;
    mask.alpha = alpha;
    mask.binning = benign.binning;
    mask.bits.resize(benign.counts.size());
    const double total = static_cast<double>(benign.total);
    for (std::size_t i = 0; i < benign.counts.size(); ++i) {
        const double share = static_cast<double>(benign.counts[i]) / total;
        mask.bits[i] = share > alpha ? 1 : 0;
    }
    return mask;
}

double attack_success_rate(const AlphaMask& mask) {
    if (mask.bits.empty()) throw DataError("mask has no bins");
    std::int64_t retained = 0;
    for (const std::uint8_t bit : mask.bits) retained += bit;
    return static_cast<double>(retained) / static_cast<double>(mask.bits.size());
}

Label classify_mask(std::int64_t rtt_us, const AlphaMask& mask) {
    if (mask.bits.size() != static_cast<std::size_t>(mask.binning.bin_count())) {
        throw ConfigError("mask bit count does not match its binning");
    }
    const auto index = mask.binning.index_of(rtt_us);
    if (!index) return Label::Attack;
    return mask.bits[static_cast<std::size_t>(*index)] ? Label::Benign : Label::Attack;
}

Label classify_mask(std::int64_t rtt_us, const AlphaMask& mask, const Binning& binning) {
    if (binning != mask.binning) {
        throw ConfigError("binning does not match the one the mask was built over");
    }
    return classify_mask(rtt_us, mask);
}

AlphaMask naive_cache_mask(const Histogram& benign, const Histogram& attack) {
    if (benign.binning != attack.binning) {
        throw ConfigError("benign and attack histograms use different binnings");
    }
    AlphaMask mask;
    mask.alpha = -1.0; // sentinel: majority rule, not a share threshold
    mask.binning = benign.binning;
    mask.bits.resize(benign.counts.size());
    for (std::size_t i = 0; i < benign.counts.size(); ++i) {
        mask.bits[i] = benign.counts[i] > attack.counts[i] ? 1 : 0;
    }
    return mask;
}

} // namespace dnstime
