#pragma once

// Transaction CSV:
//   query_id,domain,rtt_us,level,label,contacts
// where contacts is empty for cache answers, else level:server:rtt_us triples
// joined by '|'. This is the interchange format between the simulator, the
// ingest pipeline, and the analysis commands.

#include "dnstime/types.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace dnstime {

void write_transactions(std::ostream& out, std::span<const Transaction> transactions);
void write_transactions_file(const std::string& path, std::span<const Transaction> transactions);

// ParseError (with line) on a bad header, wrong field counts, out-of-range
// query ids, or malformed contact triples.
std::vector<Transaction> read_transactions(std::istream& in);
std::vector<Transaction> read_transactions_file(const std::string& path);

} // namespace dnstime
