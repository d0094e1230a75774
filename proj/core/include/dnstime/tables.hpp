#pragma once

#include "dnstime/types.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>

namespace dnstime {

// Share of one domain's transactions answered at each level. Shares sum to 1
// over the levels present.
struct DomainTable {
    std::string domain;
    std::int64_t total = 0;
    std::map<DnsLevel, double> level_shares;
};

// Level composition of one domain inside an RTT window [lo_us, hi_us).
// interval_probability is the fraction of the domain's transactions that fall
// in the window; level_shares describe the composition within the window and
// sum to 1 when the window is non-empty.
struct IntervalTable {
    std::string domain;
    std::int64_t lo_us = 0;
    std::int64_t hi_us = 0;
    std::int64_t domain_total = 0;
    std::int64_t interval_total = 0;
    double interval_probability = 0.0;
    std::map<DnsLevel, double> level_shares;
};

// DataError when the domain never appears in the transactions.
DomainTable domain_table(std::span<const Transaction> transactions, const std::string& domain);

// invalid_argument when hi_us <= lo_us; DataError when the domain is unseen.
// An empty window yields probability 0 and no shares.
IntervalTable interval_table(std::span<const Transaction> transactions, const std::string& domain,
                             std::int64_t lo_us, std::int64_t hi_us);

} // namespace dnstime
