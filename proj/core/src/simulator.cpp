#include "dnstime/simulator.hpp"

#include "dnstime/error.hpp"

#include <algorithm>
#include <cmath>

namespace dnstime {

namespace {

std::int64_t clamp_positive(std::int64_t value) {
    return value < 1 ? 1 : value;
}

// Picks the answering server for one contact. Named servers are drawn
// uniformly; levels modeled only by a "*" fallback get a synthesized name so
// logs and registries stay meaningful.
std::string pick_server(const LevelModel& model, DnsLevel level, const std::string& domain,
                        Rng& rng) {
    const std::vector<std::string> named = model.servers_for(level);
    if (!named.empty()) {
        return named[rng.next_below(named.size())];
    }
    switch (level) {
    case DnsLevel::Sld: return "ns1." + domain;
    case DnsLevel::Host: return "host." + domain;
    case DnsLevel::Root: return "root";
    case DnsLevel::Gtld: return "gtld";
    case DnsLevel::Cctld: return "cctld";
    default: return "server";
    }
}

DnsLevel draw_level(const std::map<DnsLevel, double>& shares, Rng& rng) {
    const double r = rng.next_unit();
    double cumulative = 0.0;
    DnsLevel last = DnsLevel::Cache;
    bool any = false;
    // all_levels() order keeps the draw independent of map iteration details.
    for (DnsLevel level : all_levels()) {
        const auto it = shares.find(level);
        if (it == shares.end() || it->second <= 0.0) continue;
        last = level;
        any = true;
        cumulative += it->second;
        if (r < cumulative) return level;
    }
    if (!any) throw ConfigError("level shares are all zero");
    return last; // r landed in the rounding slack at the top of the CDF
}

} // namespace

std::int64_t sample_level_rtt(const LevelModel& model, DnsLevel level,
                              const std::string& server, Rng& rng) {
    const LevelEntry& entry = model.entry_for(level, server);
    const double ms = entry.offset_ms + static_cast<double>(rng.poisson(entry.lambda_ms)) +
                      (entry.jitter_ms > 0.0 ? rng.uniform_real(0.0, entry.jitter_ms) : 0.0);
    return clamp_positive(static_cast<std::int64_t>(std::llround(ms * 1000.0)));
}

std::int64_t sample_cache_rtt(const LevelModel& model, Rng& rng) {
    const std::int64_t center = model.cache_ping_mean_us() / 2;
    const std::int64_t lo = std::max<std::int64_t>(1, center - LevelModel::kCacheHalfSpreadUs);
    const std::int64_t hi = std::max<std::int64_t>(lo, center + LevelModel::kCacheHalfSpreadUs);
    return rng.uniform_int(lo, hi);
}

std::vector<DnsLevel> resolution_chain(DnsLevel level) {
    switch (level) {
    case DnsLevel::Root: return {DnsLevel::Root, DnsLevel::Gtld, DnsLevel::Sld};
    case DnsLevel::Gtld: return {DnsLevel::Gtld, DnsLevel::Sld};
    case DnsLevel::Cctld: return {DnsLevel::Cctld, DnsLevel::Sld};
    case DnsLevel::Sld: return {DnsLevel::Sld};
    case DnsLevel::Host: return {DnsLevel::Host};
    default: return {};
    }
}

std::vector<Transaction> simulate_benign(const Workload& workload, const LevelModel& model,
                                         std::uint64_t seed) {
    workload.validate();
    model.validate();
    // Fail early if a referenced level has no model entry at all.
    for (const DomainSpec& domain : workload.domains) {
        for (const auto& [level, share] : workload.effective_shares(domain)) {
            if (share <= 0.0) continue;
            if (level == DnsLevel::Cache) {
                if (!model.has_cache()) {
                    throw ConfigError("workload uses the cache but the model has no cache entry");
                }
                continue;
            }
            for (DnsLevel hop : resolution_chain(level)) {
                if (!model.has_level(hop)) {
                    throw ConfigError("workload reaches level '" + std::string(to_string(hop)) +
                                      "' but the model has no entry for it");
                }
            }
        }
    }

    Rng rng(seed);
    std::vector<Transaction> out;
    out.reserve(static_cast<std::size_t>(workload.total_queries));
    for (std::int64_t q = 0; q < workload.total_queries; ++q) {
        const DomainSpec& domain =
            workload.domains[rng.next_below(workload.domains.size())];
        const DnsLevel level = draw_level(workload.effective_shares(domain), rng);

        Transaction tx;
        tx.query_id = static_cast<int>(q % 65536);
        tx.domain = domain.name;
        tx.label = Label::Benign;
        tx.level = level;
        if (level == DnsLevel::Cache) {
            tx.rtt_us = sample_cache_rtt(model, rng);
        } else {
            std::int64_t total = 0;
            for (DnsLevel hop : resolution_chain(level)) {
                Contact contact;
                contact.level = hop;
                contact.server = pick_server(model, hop, domain.name, rng);
                contact.rtt_us = sample_level_rtt(model, hop, contact.server, rng);
                total += contact.rtt_us;
                tx.contacts.push_back(std::move(contact));
            }
            // Client <-> resolver leg on top of the upstream chain.
            total += sample_cache_rtt(model, rng);
            tx.rtt_us = total;
        }
        out.push_back(std::move(tx));
    }
    return out;
}

std::vector<Transaction> simulate_attack(std::span<const Transaction> benign,
                                         const LevelModel& model, std::uint64_t seed) {
    const AttackEntry& attack = model.attack();
    const std::int64_t lo =
        std::max<std::int64_t>(1, static_cast<std::int64_t>(std::llround(attack.min_ms * 1000.0)));
    const std::int64_t hi =
        std::max(lo, static_cast<std::int64_t>(std::llround(attack.max_ms * 1000.0)));

    Rng rng(seed);
    std::vector<Transaction> out;
    out.reserve(benign.size());
    for (const Transaction& b : benign) {
        Transaction tx;
        tx.query_id = b.query_id;
        tx.domain = b.domain;
        tx.rtt_us = rng.uniform_int(lo, hi);
        tx.level = DnsLevel::Cache; // spoofed answers pose as local responses
        tx.label = Label::Attack;
        out.push_back(std::move(tx));
    }
    return out;
}

} // namespace dnstime
