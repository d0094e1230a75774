#include "dnstime/workload.hpp"

#include "dnstime/error.hpp"

#include <cmath>
#include <set>

namespace dnstime {

std::string_view to_string(TtlMode mode) noexcept {
    switch (mode) {
    case TtlMode::LongTtl: return "long";
    case TtlMode::ZeroTtl: return "zero";
    case TtlMode::Mixed: return "mixed";
    }
    return "mixed";
}

TtlMode ttl_mode_from_string(std::string_view text) {
    if (text == "long") return TtlMode::LongTtl;
    if (text == "zero") return TtlMode::ZeroTtl;
    if (text == "mixed") return TtlMode::Mixed;
    throw ConfigError("unknown ttl mode: '" + std::string(text) + "'");
}

std::map<DnsLevel, double> Workload::effective_shares(const DomainSpec& domain) const {
    if (ttl_mode == TtlMode::LongTtl) {
        return {{DnsLevel::Cache, 1.0}};
    }
    if (ttl_mode == TtlMode::ZeroTtl) {
        double resolve_sum = 0.0;
        for (const auto& [level, share] : domain.level_shares) {
            if (level != DnsLevel::Cache) resolve_sum += share;
        }
        if (!(resolve_sum > 0.0)) {
            throw ConfigError("domain '" + domain.name +
                              "' has no resolve shares to carry a zero-ttl workload");
        }
        std::map<DnsLevel, double> shares;
        for (const auto& [level, share] : domain.level_shares) {
            if (level != DnsLevel::Cache && share > 0.0) shares[level] = share / resolve_sum;
        }
        return shares;
    }
    return domain.level_shares;
}

void Workload::validate() const {
    if (domains.empty()) throw ConfigError("workload has no domains");
    if (total_queries <= 0) throw ConfigError("workload total_queries must be > 0");
    std::set<std::string> names;
    for (const DomainSpec& domain : domains) {
        if (domain.name.empty()) throw ConfigError("workload domain with empty name");
        if (!names.insert(domain.name).second) {
            throw ConfigError("duplicate workload domain '" + domain.name + "'");
        }
        double sum = 0.0;
        for (const auto& [level, share] : domain.level_shares) {
            if (level == DnsLevel::Unknown) {
                throw ConfigError("domain '" + domain.name + "' assigns share to level unknown");
            }
            if (share < 0.0) {
                throw ConfigError("domain '" + domain.name + "' has a negative level share");
            }
            sum += share;
        }
        if (std::fabs(sum - 1.0) > 1e-9) {
            throw ConfigError("domain '" + domain.name + "' level shares sum to " +
                              std::to_string(sum) + ", expected 1");
        }
        if (ttl_mode == TtlMode::ZeroTtl) {
            effective_shares(domain); // throws if nothing remains outside the cache
        }
    }
}

Workload Workload::from_kv(const KvConfig& cfg) {
    Workload workload;
    workload.total_queries = cfg.require_int("total_queries");
    workload.ttl_mode = ttl_mode_from_string(cfg.get_or("ttl_mode", "mixed"));

    // Keys look like: domain.<name>.<level>; domain names hold dots, so the
    // level is the last token.
    std::set<std::string> names;
    for (const std::string& key : cfg.keys_with_prefix("domain.")) {
        const std::string rest = key.substr(7);
        const auto last_dot = rest.rfind('.');
        if (last_dot == std::string::npos || last_dot == 0) {
            throw ConfigError("malformed workload key '" + key + "'");
        }
        names.insert(rest.substr(0, last_dot));
    }
    for (const std::string& name : names) {
        DomainSpec spec;
        spec.name = name;
        for (DnsLevel level : all_levels()) {
            const std::string key = "domain." + name + "." + std::string(to_string(level));
            if (cfg.contains(key)) spec.level_shares[level] = cfg.require_double(key);
        }
        workload.domains.push_back(std::move(spec));
    }
    workload.validate();
    return workload;
}

KvConfig Workload::to_kv() const {
    KvConfig cfg;
    cfg.set_int("total_queries", total_queries);
    cfg.set("ttl_mode", std::string(to_string(ttl_mode)));
    for (const DomainSpec& domain : domains) {
        for (const auto& [level, share] : domain.level_shares) {
            cfg.set_double("domain." + domain.name + "." + std::string(to_string(level)), share);
        }
    }
    return cfg;
}

} // namespace dnstime
