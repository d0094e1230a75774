#pragma once

// Run manifest: a sorted key=value record of everything that determines a
// run's output — command, parameters, seed, and a fingerprint of each input
// file. Deliberately contains no timestamps or host details, so reruns with
// identical inputs produce byte-identical manifests.

#include "dnstime/kv_config.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

namespace dnstime {

struct FileFingerprint {
    std::uint64_t fnv1a = 0;
    std::uint64_t bytes = 0;

    bool operator==(const FileFingerprint&) const = default;
};

// 64-bit FNV-1a over the file's raw bytes. ConfigError if unopenable.
FileFingerprint fingerprint_file(const std::string& path);

class Manifest {
public:
    void set(const std::string& key, const std::string& value) { kv_.set(key, value); }
    void set_int(const std::string& key, std::int64_t value) { kv_.set_int(key, value); }
    void set_double(const std::string& key, double value) { kv_.set_double(key, value); }

    // Records <role>.<name>.path / .fnv1a (16 hex digits) / .bytes. Inputs are
    // fingerprinted before a run consumes them, outputs after writing.
    void add_file(const std::string& role, const std::string& name, const std::string& path);
    void add_input(const std::string& name, const std::string& path) {
        add_file("input", name, path);
    }
    void add_output(const std::string& name, const std::string& path) {
        add_file("output", name, path);
    }

    void write(std::ostream& out) const { kv_.write(out); }
    void write_file(const std::string& path) const;

    const KvConfig& kv() const { return kv_; }

private:
    KvConfig kv_;
};

} // namespace dnstime
