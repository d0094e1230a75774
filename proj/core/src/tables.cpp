#include "dnstime/tables.hpp"

#include "dnstime/error.hpp"

#include <stdexcept>

namespace dnstime {

DomainTable domain_table(std::span<const Transaction> transactions, const std::string& domain) {
    DomainTable table;
    table.domain = domain;
    std::map<DnsLevel, std::int64_t> counts;
    for (const Transaction& tx : transactions) {
        if (tx.domain != domain) continue;
        ++table.total;
        ++counts[tx.level];
    }
    if (table.total == 0) throw DataError("domain '" + domain + "' not present in the data");
    for (const auto& [level, count] : counts) {
        table.level_shares[level] =
            static_cast<double>(count) / static_cast<double>(table.total);
    }
    return table;
}

IntervalTable interval_table(std::span<const Transaction> transactions, const std::string& domain,
                             std::int64_t lo_us, std::int64_t hi_us) {
    if (hi_us <= lo_us) throw std::invalid_argument("interval must satisfy hi > lo");
    IntervalTable table;
    table.domain = domain;
    table.lo_us = lo_us;
    table.hi_us = hi_us;
    std::map<DnsLevel, std::int64_t> counts;
    for (const Transaction& tx : transactions) {
        if (tx.domain != domain) continue;
        ++table.domain_total;
        if (tx.rtt_us >= lo_us && tx.rtt_us < hi_us) {
            ++table.interval_total;
            ++counts[tx.level];
        }
    }
    if (table.domain_total == 0) {
        throw DataError("domain '" + domain + "' not present in the data");
    }
    table.interval_probability =
        static_cast<double>(table.interval_total) / static_cast<double>(table.domain_total);
    for (const auto& [level, count] : counts) {
        table.level_shares[level] =
            static_cast<double>(count) / static_cast<double>(table.interval_total);
    }
    return table;
}

} // namespace dnstime
