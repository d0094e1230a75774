#include "dnstime/transaction_io.hpp"

#include "dnstime/error.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

namespace dnstime {

namespace {

constexpr std::string_view kHeader = "query_id,domain,rtt_us,level,label,contacts";

std::vector<std::string_view> split_on(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t at = text.find(sep, start);
        if (at == std::string_view::npos) {
            parts.push_back(text.substr(start));
            return parts;
        }
        parts.push_back(text.substr(start, at - start));
        start = at + 1;
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

} // namespace

void write_transactions(std::ostream& out, std::span<const Transaction> transactions) {
    out << kHeader << "\n";
    for (const Transaction& tx : transactions) {
        out << tx.query_id << ',' << tx.domain << ',' << tx.rtt_us << ','
            << to_string(tx.level) << ',' << to_string(tx.label) << ',';
        for (std::size_t i = 0; i < tx.contacts.size(); ++i) {
            const Contact& contact = tx.contacts[i];
            if (i > 0) out << '|';
            out << to_string(contact.level) << ':' << contact.server << ':' << contact.rtt_us;
        }
        out << "\n";
    }
}

void write_transactions_file(const std::string& path,
                             std::span<const Transaction> transactions) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open transactions file for writing: " + path);
    write_transactions(out, transactions);
    if (!out.flush()) throw ConfigError("failed writing transactions file: " + path);
}

std::vector<Transaction> read_transactions(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty transactions file: missing header", 1);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kHeader) {
        throw ParseError("bad transactions header, expected '" + std::string(kHeader) + "'", 1);
    }

    std::vector<Transaction> transactions;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_on(line, ',');
        if (fields.size() != 6) {
            throw ParseError("expected 6 fields, got " + std::to_string(fields.size()), line_no);
        }
        Transaction tx;
        const std::int64_t qid = parse_int_field(fields[0], "query_id", line_no);
        if (qid < 0 || qid > 65535) {
            throw ParseError("query_id out of range 0..65535: " + std::to_string(qid), line_no);
        }
        tx.query_id = static_cast<int>(qid);
        if (fields[1].empty()) throw ParseError("domain is empty", line_no);
        tx.domain = std::string(fields[1]);
        tx.rtt_us = parse_int_field(fields[2], "rtt_us", line_no);
        try {
            tx.level = level_from_string(fields[3]);
            tx.label = label_from_string(fields[4]);
        } catch (const ConfigError& err) {
            throw ParseError(err.what(), line_no);
        }
        if (!fields[5].empty()) {
            for (const std::string_view triple : split_on(fields[5], '|')) {
                // server names contain dots but never colons, so the first and
                // last colon delimit the server field.
                const std::size_t first = triple.find(':');
                const std::size_t last = triple.rfind(':');
                if (first == std::string_view::npos || first == last) {
                    throw ParseError("contact is not level:server:rtt_us: '" +
                                     std::string(triple) + "'",
                                     line_no);
                }
                Contact contact;
                try {
                    contact.level = level_from_string(triple.substr(0, first));
                } catch (const ConfigError& err) {
                    throw ParseError(err.what(), line_no);
                }
                contact.server = std::string(triple.substr(first + 1, last - first - 1));
                if (contact.server.empty()) {
                    throw ParseError("contact server is empty", line_no);
                }
                contact.rtt_us = parse_int_field(triple.substr(last + 1), "contact rtt_us",
                                                 line_no);
                tx.contacts.push_back(std::move(contact));
            }
        }
        transactions.push_back(std::move(tx));
    }
    return transactions;
}

std::vector<Transaction> read_transactions_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open transactions file: " + path);
    return read_transactions(in);
}

} // namespace dnstime
