#include "dnstime/log_record.hpp"

#include "dnstime/error.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace dnstime {

namespace {

constexpr std::string_view kLogHeader = "ts_us,dir,qid,domain,src,dst";
constexpr std::string_view kRegistryHeader = "address,level,server_name";

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::int64_t parse_int_field(std::string_view text, std::string_view field, std::size_t line) {
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ParseError(std::string(field) + " is not an integer: '" + std::string(text) + "'",
                         line);
    }
    return value;
}

void strip_trailing_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

} // namespace

std::string_view to_string(Direction dir) noexcept {
    return dir == Direction::Query ? "Q" : "R";
}

std::vector<LogRecord> parse_log(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty log: missing header", 1);
    strip_trailing_cr(line);
    if (line != kLogHeader) {
        throw ParseError("bad log header, expected '" + std::string(kLogHeader) + "'", 1);
    }

    std::vector<LogRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        strip_trailing_cr(line);
        if (line.empty()) continue;
        const auto fields = split_csv(line);
        if (fields.size() != 6) {
            throw ParseError("expected 6 fields, got " + std::to_string(fields.size()), line_no);
        }
        LogRecord rec;
        rec.ts_us = parse_int_field(fields[0], "ts_us", line_no);
        if (fields[1] == "Q") {
            rec.dir = Direction::Query;
        } else if (fields[1] == "R") {
            rec.dir = Direction::Response;
        } else {
            throw ParseError("dir must be Q or R, got '" + std::string(fields[1]) + "'", line_no);
        }
        const std::int64_t qid = parse_int_field(fields[2], "qid", line_no);
        if (qid < 0 || qid > 65535) {
            throw ParseError("qid out of range 0..65535: " + std::to_string(qid), line_no);
        }
        rec.qid = static_cast<int>(qid);
        if (fields[3].empty()) throw ParseError("domain is empty", line_no);
        if (fields[4].empty()) throw ParseError("src is empty", line_no);
        if (fields[5].empty()) throw ParseError("dst is empty", line_no);
        rec.domain = std::string(fields[3]);
        rec.src = std::string(fields[4]);
        rec.dst = std::string(fields[5]);
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<LogRecord> parse_log_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open log file: " + path);
    return parse_log(in);
}

void write_log(std::ostream& out, std::span<const LogRecord> records) {
    out << kLogHeader << "\n";
    for (const LogRecord& rec : records) {
        out << rec.ts_us << ',' << to_string(rec.dir) << ',' << rec.qid << ',' << rec.domain
            << ',' << rec.src << ',' << rec.dst << "\n";
    }
}

void ServerRegistry::add(const std::string& address, DnsLevel level,
                         const std::string& server_name) {
    if (level == DnsLevel::Cache || level == DnsLevel::Unknown) {
        throw ConfigError("registry level must be a server level, got '" +
                          std::string(to_string(level)) + "' for " + address);
    }
    if (address.empty()) throw ConfigError("registry address is empty");
    if (server_name.empty()) throw ConfigError("registry server name is empty for " + address);
    const auto [it, inserted] = entries_.emplace(address, RegistryEntry{level, server_name});
    if (!inserted) throw ConfigError("duplicate registry address: " + address);
}

std::optional<RegistryEntry> ServerRegistry::lookup(std::string_view address) const {
    const auto it = entries_.find(address);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

ServerRegistry ServerRegistry::parse(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty registry: missing header", 1);
    strip_trailing_cr(line);
    if (line != kRegistryHeader) {
        throw ParseError("bad registry header, expected '" + std::string(kRegistryHeader) + "'",
                         1);
    }

    ServerRegistry registry;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        strip_trailing_cr(line);
        if (line.empty()) continue;
        const auto fields = split_csv(line);
        if (fields.size() != 3) {
            throw ParseError("expected 3 fields, got " + std::to_string(fields.size()), line_no);
        }
        try {
            registry.add(std::string(fields[0]), level_from_string(fields[1]),
                         std::string(fields[2]));
        } catch (const ConfigError& err) {
            throw ParseError(err.what(), line_no);
        }
    }
    return registry;
}

ServerRegistry ServerRegistry::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open registry file: " + path);
    return parse(in);
}

void ServerRegistry::write(std::ostream& out) const {
    out << kRegistryHeader << "\n";
    for (const auto& [address, entry] : entries_) {
        out << address << ',' << to_string(entry.level) << ',' << entry.server_name << "\n";
    }
}

} // namespace dnstime
