#include "dnstime/manifest.hpp"

#include "dnstime/error.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace dnstime {

FileFingerprint fingerprint_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open file for fingerprinting: " + path);

    FileFingerprint fp;
    fp.fnv1a = 14695981039346656037ULL;
    char buffer[1 << 16];
    while (in.read(buffer, sizeof buffer) || in.gcount() > 0) {
        const std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            fp.fnv1a ^= static_cast<unsigned char>(buffer[i]);
            fp.fnv1a *= 1099511628211ULL;
        }
        fp.bytes += static_cast<std::uint64_t>(got);
    }
    return fp;
}

void Manifest::add_file(const std::string& role, const std::string& name,
                        const std::string& path) {
    const FileFingerprint fp = fingerprint_file(path);
    const std::string prefix = role + "." + name;
    kv_.set(prefix + ".path", path);
    std::ostringstream hex;
    hex << std::hex << std::setw(16) << std::setfill('0') << fp.fnv1a;
    kv_.set(prefix + ".fnv1a", hex.str());
    kv_.set(prefix + ".bytes", std::to_string(fp.bytes));
}

void Manifest::write_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open manifest for writing: " + path);
    write(out);
    if (!out.flush()) throw ConfigError("failed writing manifest: " + path);
}

} // namespace dnstime
