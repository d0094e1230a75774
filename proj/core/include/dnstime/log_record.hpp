#pragma once

// Packet-log and server-registry formats.
//
// Log CSV:      ts_us,dir,qid,domain,src,dst     (dir is Q or R)
// Registry CSV: address,level,server_name        (level is root..host)
//
// A log line is one DNS message seen on the wire: a query leaving `src` for
// `dst`, or the response flowing back. The registry maps server addresses to
// their hierarchy level so ingested contacts can be tagged.

#include "dnstime/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dnstime {

enum class Direction {
    Query,
    Response,
};

std::string_view to_string(Direction dir) noexcept; // "Q" / "R"

struct LogRecord {
    std::int64_t ts_us = 0;
    Direction dir = Direction::Query;
    int qid = 0; // 0..65535
    std::string domain;
    std::string src;
    std::string dst;

    bool operator==(const LogRecord&) const = default;
};

// ParseError (with the offending line) on a bad header, wrong field count,
// non-numeric or out-of-range fields, or an unknown direction letter.
std::vector<LogRecord> parse_log(std::istream& in);
std::vector<LogRecord> parse_log_file(const std::string& path); // ConfigError if unopenable

void write_log(std::ostream& out, std::span<const LogRecord> records);

struct RegistryEntry {
    DnsLevel level = DnsLevel::Unknown;
    std::string server_name;

    bool operator==(const RegistryEntry&) const = default;
};

// Address -> (level, name) directory of the servers a resolver may contact.
// Cache and Unknown are not registerable levels: the cache is not an upstream
// server, and Unknown is what a lookup miss means.
class ServerRegistry {
public:
    // ConfigError on a duplicate address or a non-registerable level.
    void add(const std::string& address, DnsLevel level, const std::string& server_name);

    std::optional<RegistryEntry> lookup(std::string_view address) const;

    std::size_t size() const { return entries_.size(); }
    const std::map<std::string, RegistryEntry, std::less<>>& entries() const { return entries_; }

    static ServerRegistry parse(std::istream& in);
    static ServerRegistry parse_file(const std::string& path); // ConfigError if unopenable
    void write(std::ostream& out) const;                       // sorted by address

private:
    std::map<std::string, RegistryEntry, std::less<>> entries_;
};

} // namespace dnstime
