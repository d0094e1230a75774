#include "dnstime/types.hpp"

#include "dnstime/error.hpp"

namespace dnstime {

int level_rank(DnsLevel level) noexcept {
    switch (level) {
    case DnsLevel::Root: return 5;
    case DnsLevel::Gtld: return 4;
    case DnsLevel::Cctld: return 4;
    case DnsLevel::Sld: return 3;
    case DnsLevel::Host: return 2;
    case DnsLevel::Cache: return 1;
    case DnsLevel::Unknown: return 0;
    }
    return 0;
}

DnsLevel dominant_level(DnsLevel a, DnsLevel b) noexcept {
    const int ra = level_rank(a);
    const int rb = level_rank(b);
    if (ra > rb) return a;
    if (rb > ra) return b;
    if (a == b) return a;
    // Equal rank but different levels: only Gtld/Cctld. Pick Gtld so the answer
    // is a function of the set of contacts, not of their order.
    return DnsLevel::Gtld;
}

std::string_view to_string(DnsLevel level) noexcept {
    switch (level) {
    case DnsLevel::Unknown: return "unknown";
    case DnsLevel::Cache: return "cache";
    case DnsLevel::Host: return "host";
    case DnsLevel::Sld: return "sld";
    case DnsLevel::Cctld: return "cctld";
    case DnsLevel::Gtld: return "gtld";
    case DnsLevel::Root: return "root";
    }
    return "unknown";
}

DnsLevel level_from_string(std::string_view text) {
    if (text == "unknown") return DnsLevel::Unknown;
    if (text == "cache") return DnsLevel::Cache;
    if (text == "host") return DnsLevel::Host;
    if (text == "sld") return DnsLevel::Sld;
    if (text == "cctld") return DnsLevel::Cctld;
    if (text == "gtld") return DnsLevel::Gtld;
    if (text == "root") return DnsLevel::Root;
    throw ConfigError("unknown DNS level name: '" + std::string(text) + "'");
}

const std::vector<DnsLevel>& all_levels() {
    static const std::vector<DnsLevel> levels = {
        DnsLevel::Cache, DnsLevel::Root,  DnsLevel::Gtld,
        DnsLevel::Cctld, DnsLevel::Sld,   DnsLevel::Host,
    };
    return levels;
}

std::string_view to_string(Label label) noexcept {
    return label == Label::Attack ? "attack" : "benign";
}

Label label_from_string(std::string_view text) {
    if (text == "attack") return Label::Attack;
    if (text == "benign") return Label::Benign;
    throw ConfigError("unknown label name: '" + std::string(text) + "'");
}

} // namespace dnstime
