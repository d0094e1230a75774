#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dnstime {

// Hierarchy position of the server that answered (or Cache for a local answer).
// Ordering for "highest level contacted": Root > Gtld = Cctld > Sld > Host > Cache.
// Unknown only arises from ingested records whose address is not in the registry;
// it never dominates a registered level.
enum class DnsLevel {
    Unknown,
    Cache,
    Host,
    Sld,
    Cctld,
    Gtld,
    Root,
};

// Rank used to pick the dominating level of a resolution. Gtld and Cctld tie.
int level_rank(DnsLevel level) noexcept;

// Deterministic maximum by rank; a Gtld/Cctld tie resolves to Gtld so the result
// does not depend on contact order.
DnsLevel dominant_level(DnsLevel a, DnsLevel b) noexcept;

std::string_view to_string(DnsLevel level) noexcept;
DnsLevel level_from_string(std::string_view text); // throws ConfigError on unknown name

// All levels in a fixed order (used for deterministic iteration).
const std::vector<DnsLevel>& all_levels();

enum class Label {
    Benign,
    Attack,
};

std::string_view to_string(Label label) noexcept;
Label label_from_string(std::string_view text); // throws ConfigError on unknown name

// One upstream server exchange observed (or simulated) during a resolution.
struct Contact {
    DnsLevel level = DnsLevel::Unknown;
    std::string server;
    std::int64_t rtt_us = 0;

    bool operator==(const Contact&) const = default;
};

// A correlated query/response pair as seen by the client, plus the upstream
// contacts that produced it. rtt_us is the client-observed response time.
struct Transaction {
    int query_id = 0; // 0..65535
    std::string domain;
    std::int64_t rtt_us = 0;
    DnsLevel level = DnsLevel::Cache;
    Label label = Label::Benign;
    std::vector<Contact> contacts;

    bool operator==(const Transaction&) const = default;
};

} // namespace dnstime
