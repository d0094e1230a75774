#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace dnstime {

// Flat "key = value" configuration file. Lines starting with '#' and blank
// lines are ignored. Keys are unique; values keep their verbatim text so
// round-trips are loss-free. Serialization emits keys in sorted order.
class KvConfig {
public:
    static KvConfig parse(std::istream& in);
    static KvConfig parse_file(const std::string& path);

    void write(std::ostream& out) const;

    void set(const std::string& key, const std::string& value);
    void set_double(const std::string& key, double value);
    void set_int(const std::string& key, std::int64_t value);

    bool contains(const std::string& key) const;
    const std::string& require(const std::string& key) const; // ConfigError if absent
    std::string get_or(const std::string& key, const std::string& fallback) const;

    double require_double(const std::string& key) const;
    std::int64_t require_int(const std::string& key) const;

    // Keys beginning with `prefix`, in sorted order.
    std::vector<std::string> keys_with_prefix(const std::string& prefix) const;

    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

} // namespace dnstime
