#include "dnstime/correlate.hpp"

#include <algorithm>
#include <utility>

namespace dnstime {

namespace {

using PairKey = std::pair<int, std::string>;

struct KeyedRecords {
    std::vector<const LogRecord*> queries;
    std::vector<const LogRecord*> responses;
};

struct RecordPair {
    const LogRecord* query = nullptr;
    const LogRecord* response = nullptr;
};

std::map<PairKey, KeyedRecords> group_by_key(std::span<const LogRecord> records) {
    std::map<PairKey, KeyedRecords> keyed;
    for (const LogRecord& rec : records) {
        KeyedRecords& bucket = keyed[{rec.qid, rec.domain}];
        (rec.dir == Direction::Query ? bucket.queries : bucket.responses).push_back(&rec);
    }
    for (auto& [key, bucket] : keyed) {
        const auto by_ts = [](const LogRecord* a, const LogRecord* b) {
            return a->ts_us < b->ts_us;
        };
        std::stable_sort(bucket.queries.begin(), bucket.queries.end(), by_ts);
        std::stable_sort(bucket.responses.begin(), bucket.responses.end(), by_ts);
    }
    return keyed;
}

// Greedy pairing within one key: queries in timestamp order each take the
// earliest unused response strictly after them. A response at or before a
// query's timestamp can never pair with that query or any later one, so it is
// permanently unmatched the moment it is skipped.
std::vector<RecordPair> pair_records(const KeyedRecords& bucket, std::size_t& unmatched_queries,
                                     std::size_t& unmatched_responses) {
    std::vector<RecordPair> pairs;
    std::size_t ri = 0;
    for (const LogRecord* query : bucket.queries) {
        while (ri < bucket.responses.size() && bucket.responses[ri]->ts_us <= query->ts_us) {
            ++unmatched_responses;
            ++ri;
        }
        if (ri < bucket.responses.size()) {
            pairs.push_back({query, bucket.responses[ri]});
            ++ri;
        } else {
            ++unmatched_queries;
        }
    }
    unmatched_responses += bucket.responses.size() - ri;
    return pairs;
}

} // namespace

CorrelationResult correlate(std::span<const LogRecord> client,
                            std::span<const LogRecord> resolver) {
    CorrelationResult result;

    const auto client_keyed = group_by_key(client);
    const auto resolver_keyed = group_by_key(resolver);

    std::map<PairKey, std::vector<std::size_t>> windows_by_key; // indices into trees
    for (const auto& [key, bucket] : client_keyed) {
        const auto pairs = pair_records(bucket, result.unmatched_client_queries,
                                        result.unmatched_client_responses);
        for (const RecordPair& p : pairs) {
            windows_by_key[key].push_back(result.trees.size());
            result.trees.push_back({*p.query, *p.response, {}});
        }
    }

    for (const auto& [key, bucket] : resolver_keyed) {
        std::size_t unmatched_q = 0;
        std::size_t unmatched_r = 0;
        const auto pairs = pair_records(bucket, unmatched_q, unmatched_r);
        result.unmatched_resolver_records += unmatched_q + unmatched_r;

        const auto windows_it = windows_by_key.find(key);
        for (const RecordPair& p : pairs) {
            std::size_t containing = 0;
            std::size_t earliest = 0;
            if (windows_it != windows_by_key.end()) {
                for (const std::size_t tree_index : windows_it->second) {
                    const ResolutionTree& tree = result.trees[tree_index];
                    if (p.query->ts_us >= tree.client_query.ts_us &&
                        p.response->ts_us <= tree.client_response.ts_us) {
                        if (containing == 0) earliest = tree_index;
                        ++containing;
                    }
                }
            }
            if (containing == 0) {
                result.unmatched_resolver_records += 2; // the pair fits no window
                continue;
            }
            if (containing > 1) ++result.ambiguous_pairings;
            result.trees[earliest].contacts.push_back({*p.query, *p.response,
                                                       DnsLevel::Unknown, p.query->dst});
        }
    }

    for (ResolutionTree& tree : result.trees) {
        std::stable_sort(tree.contacts.begin(), tree.contacts.end(),
                         [](const TreeContact& a, const TreeContact& b) {
                             return a.query.ts_us < b.query.ts_us;
                         });
    }
    std::stable_sort(result.trees.begin(), result.trees.end(),
                     [](const ResolutionTree& a, const ResolutionTree& b) {
                         return a.client_query.ts_us < b.client_query.ts_us;
                     });
    return result;
}

void resolve_contact_levels(ResolutionTree& tree, const ServerRegistry& registry) {
    for (TreeContact& contact : tree.contacts) {
        if (const auto entry = registry.lookup(contact.query.dst)) {
            contact.level = entry->level;
            contact.server = entry->server_name;
        } else {
            contact.level = DnsLevel::Unknown;
            contact.server = contact.query.dst;
        }
    }
}

Transaction tag_level(const ResolutionTree& tree) {
    Transaction tx;
    tx.query_id = tree.client_query.qid;
    tx.domain = tree.client_query.domain;
    tx.rtt_us = tree.client_response.ts_us - tree.client_query.ts_us;
    tx.label = Label::Benign;
    if (tree.contacts.empty()) {
        tx.level = DnsLevel::Cache;
    } else {
        DnsLevel level = tree.contacts.front().level;
        for (std::size_t i = 1; i < tree.contacts.size(); ++i) {
            level = dominant_level(level, tree.contacts[i].level);
        }
        tx.level = level;
    }
    tx.contacts.reserve(tree.contacts.size());
    for (const TreeContact& contact : tree.contacts) {
        tx.contacts.push_back({contact.level, contact.server,
                               contact.response.ts_us - contact.query.ts_us});
    }
    return tx;
}

std::map<DnsLevel, std::int64_t> accumulate_rtt(const ResolutionTree& tree) {
    std::map<DnsLevel, std::int64_t> accumulated;
    if (tree.contacts.empty()) return accumulated;

    std::vector<const TreeContact*> ordered;
    ordered.reserve(tree.contacts.size());
    for (const TreeContact& contact : tree.contacts) ordered.push_back(&contact);
    std::stable_sort(ordered.begin(), ordered.end(), [](const TreeContact* a,
                                                        const TreeContact* b) {
        return a->query.ts_us < b->query.ts_us;
    });

    std::int64_t end_ts = ordered.front()->response.ts_us;
    for (const TreeContact* contact : ordered) {
        end_ts = std::max(end_ts, contact->response.ts_us);
    }
    for (const TreeContact* contact : ordered) {
        accumulated.try_emplace(contact->level, end_ts - contact->query.ts_us);
    }
    return accumulated;
}

std::map<DnsLevel, std::int64_t> accumulate_rtt(const Transaction& transaction) {
    std::map<DnsLevel, std::int64_t> accumulated;
    const auto& contacts = transaction.contacts;
    if (contacts.empty()) return accumulated;

    std::vector<std::int64_t> suffix(contacts.size());
    std::int64_t running = 0;
    for (std::size_t i = contacts.size(); i > 0; --i) {
        running += contacts[i - 1].rtt_us;
        suffix[i - 1] = running;
    }
    for (std::size_t i = 0; i < contacts.size(); ++i) {
        accumulated.try_emplace(contacts[i].level, suffix[i]);
    }
    return accumulated;
}

} // namespace dnstime
