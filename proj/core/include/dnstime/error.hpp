#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dnstime {

// Bad configuration: invalid model entries, unusable workloads, mismatched parameters.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input text (CSV logs, registries, model files). Carries the 1-based line.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Structurally valid data that cannot answer the request (unseen domain, empty distribution).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace dnstime
