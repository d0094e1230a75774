#pragma once

#include "dnstime/kv_config.hpp"
#include "dnstime/types.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dnstime {

// RTT shape for one (level, server) pair, in milliseconds:
//   sample_ms = offset_ms + Poisson(lambda_ms) + Uniform(0, jitter_ms)
// offset carries the network baseline, the Poisson term the queueing spread,
// and the jitter term the path variability.
struct LevelEntry {
    double offset_ms = 0.0;
    double lambda_ms = 1.0;
    double jitter_ms = 0.0;

    bool operator==(const LevelEntry&) const = default;
};

// Spoofed-response timing envelope, uniform in [min_ms, max_ms].
struct AttackEntry {
    double min_ms = 0.0;
    double max_ms = 0.0;

    bool operator==(const AttackEntry&) const = default;
};

// Per-level RTT model. Named entries are keyed by (level, server); the server
// name "*" acts as the per-level fallback for servers without a named entry.
// The cache is described only by its ping mean: cache answers are drawn from a
// fixed +/-75 us band around half the ping (cache responses sit below the ping
// value).
class LevelModel {
public:
    static constexpr std::int64_t kCacheHalfSpreadUs = 75;

    void set_entry(DnsLevel level, const std::string& server, LevelEntry entry);
    void set_cache_ping_mean_ms(double ping_mean_ms);
    void set_attack(AttackEntry attack);

    // Exact (level, server) match, else the level's "*" entry, else ConfigError
    // naming both the level and the server.
    const LevelEntry& entry_for(DnsLevel level, const std::string& server) const;

    bool has_cache() const { return cache_ping_mean_ms_.has_value(); }
    double cache_ping_mean_ms() const; // ConfigError if unset
    std::int64_t cache_ping_mean_us() const;

    bool has_attack() const { return attack_.has_value(); }
    const AttackEntry& attack() const; // ConfigError if unset

    // Named servers for a level (excludes the "*" fallback), sorted by name.
    std::vector<std::string> servers_for(DnsLevel level) const;

    bool has_level(DnsLevel level) const;

    // Throws ConfigError on non-positive lambda, negative offset/jitter,
    // non-positive ping, attack bounds out of order, or oversized lambda.
    void validate() const;

    static LevelModel from_kv(const KvConfig& cfg);
    KvConfig to_kv() const;

    const std::map<std::pair<DnsLevel, std::string>, LevelEntry>& entries() const {
        return entries_;
    }

private:
    std::map<std::pair<DnsLevel, std::string>, LevelEntry> entries_;
    std::optional<double> cache_ping_mean_ms_;
    std::optional<AttackEntry> attack_;
};

} // namespace dnstime
