#pragma once

// Reassembly of resolution trees from raw packet logs. The client log pairs
// into (query, response) windows; resolver-side pairs that share the window's
// (qid, domain) key and fall inside it become the window's upstream contacts.

#include "dnstime/log_record.hpp"
#include "dnstime/types.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace dnstime {

struct TreeContact {
    LogRecord query;
    LogRecord response;
    DnsLevel level = DnsLevel::Unknown; // set by resolve_contact_levels
    std::string server;                 // registry name, else the contacted address

    bool operator==(const TreeContact&) const = default;
};

struct ResolutionTree {
    LogRecord client_query;
    LogRecord client_response;
    std::vector<TreeContact> contacts; // sorted by query timestamp

    bool operator==(const ResolutionTree&) const = default;
};

struct CorrelationResult {
    std::vector<ResolutionTree> trees; // sorted by client query timestamp
    // Records that found no partner. Nothing is silently dropped: every input
    // record is either inside a tree or counted here.
    std::size_t unmatched_client_queries = 0;
    std::size_t unmatched_client_responses = 0;
    std::size_t unmatched_resolver_records = 0;
    // Resolver pairs that fit inside more than one same-key client window.
    // They are assigned to the earliest window, but the count is surfaced
    // because such assignments are guesses.
    std::size_t ambiguous_pairings = 0;
};

// Pairing is greedy within each (qid, domain) key: queries in timestamp order
// each take the earliest unused response strictly after them. Resolver pairs
// are built the same way, then assigned to the earliest same-key client
// window that contains them.
CorrelationResult correlate(std::span<const LogRecord> client,
                            std::span<const LogRecord> resolver);

// Tags each contact with the registry level of the address it contacted (the
// query's dst) and the registered server name. Unregistered addresses stay
// Unknown and keep the address as the server name.
void resolve_contact_levels(ResolutionTree& tree, const ServerRegistry& registry);

// Collapses a tree to a Transaction: client RTT, contacts with their own RTTs,
// and the dominating contact level (no contacts means a cache answer). Labels
// are always Benign — ingested traffic carries no ground truth.
Transaction tag_level(const ResolutionTree& tree);

// Accumulated response time per level, the time from a level's first query
// until the end of the resolution. Contacts are taken in query-timestamp
// order; the resolution ends at the last contact's response. When a level was
// contacted more than once its earliest contact wins.
std::map<DnsLevel, std::int64_t> accumulate_rtt(const ResolutionTree& tree);

// Same view for simulated transactions, where contacts are strictly
// sequential with no think time: level i's accumulated time is the sum of the
// contact RTTs from i onward. Cache transactions have no contacts and
// contribute nothing.
std::map<DnsLevel, std::int64_t> accumulate_rtt(const Transaction& transaction);

} // namespace dnstime
