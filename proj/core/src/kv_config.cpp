#include "dnstime/kv_config.hpp"

#include "dnstime/error.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace dnstime {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

} // namespace

KvConfig KvConfig::parse(std::istream& in) {
    KvConfig cfg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ParseError("expected 'key = value'", line_no);
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) throw ParseError("empty key", line_no);
        if (cfg.values_.count(key) != 0) throw ParseError("duplicate key '" + key + "'", line_no);
        cfg.values_[key] = value;
    }
    return cfg;
}

KvConfig KvConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open config file: " + path);
    return parse(in);
}

void KvConfig::write(std::ostream& out) const {
    for (const auto& [key, value] : values_) {
        out << key << " = " << value << "\n";
    }
}

void KvConfig::set(const std::string& key, const std::string& value) {
    values_[key] = value;
}

void KvConfig::set_double(const std::string& key, double value) {
    std::ostringstream os;
    os.precision(17);
    os << value;
    values_[key] = os.str();
}

void KvConfig::set_int(const std::string& key, std::int64_t value) {
    values_[key] = std::to_string(value);
}

bool KvConfig::contains(const std::string& key) const {
    return values_.count(key) != 0;
}

const std::string& KvConfig::require(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("missing config key '" + key + "'");
    return it->second;
}

std::string KvConfig::get_or(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double KvConfig::require_double(const std::string& key) const {
    const std::string& text = require(key);
    errno = 0;
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0' || errno == ERANGE) {
        throw ConfigError("config key '" + key + "' is not a number: '" + text + "'");
    }
    return value;
}

std::int64_t KvConfig::require_int(const std::string& key) const {
    const std::string& text = require(key);
    errno = 0;
    char* end = nullptr;
    const long long value = std::strtoll(text.c_str(), &end, 10);
    if (end == text.c_str() || *end != '\0' || errno == ERANGE) {
        throw ConfigError("config key '" + key + "' is not an integer: '" + text + "'");
    }
    return static_cast<std::int64_t>(value);
}

std::vector<std::string> KvConfig::keys_with_prefix(const std::string& prefix) const {
    std::vector<std::string> keys;
    for (auto it = values_.lower_bound(prefix); it != values_.end(); ++it) {
        if (it->first.compare(0, prefix.size(), prefix) != 0) break;
        keys.push_back(it->first);
    }
    return keys;
}

} // namespace dnstime
