#pragma once

#include "dnstime/kv_config.hpp"
#include "dnstime/types.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace dnstime {

// TTL regime of the measured zone. Long TTLs force every answer out of the
// cache; zero TTLs force a full resolution every time; Mixed uses the
// per-domain shares as given.
enum class TtlMode {
    LongTtl,
    ZeroTtl,
    Mixed,
};

std::string_view to_string(TtlMode mode) noexcept;
TtlMode ttl_mode_from_string(std::string_view text);

struct DomainSpec {
    std::string name;
    // Share of this domain's queries answered at each level. Sums to 1 +/- 1e-9.
    std::map<DnsLevel, double> level_shares;

    bool operator==(const DomainSpec&) const = default;
};

struct Workload {
    std::vector<DomainSpec> domains;
    std::int64_t total_queries = 0;
    TtlMode ttl_mode = TtlMode::Mixed;

    // Shares after applying the TTL regime. LongTtl collapses everything onto
    // the cache; ZeroTtl removes the cache share and renormalizes the rest.
    std::map<DnsLevel, double> effective_shares(const DomainSpec& domain) const;

    // ConfigError on empty domain list, non-positive totals, negative shares,
    // share sums off by more than 1e-9, or a ZeroTtl workload whose domain has
    // no resolve shares to renormalize.
    void validate() const;

    static Workload from_kv(const KvConfig& cfg);
    KvConfig to_kv() const;
};

} // namespace dnstime
