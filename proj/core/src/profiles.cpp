#include "dnstime/profiles.hpp"

#include "dnstime/error.hpp"

#include <initializer_list>

namespace dnstime {

namespace {

void add_servers(LevelModel& model, DnsLevel level, const std::string& suffix,
                 std::initializer_list<std::pair<const char*, LevelEntry>> servers) {
    for (const auto& [letter, entry] : servers) {
        model.set_entry(level, std::string(letter) + suffix, entry);
    }
}

LevelModel local_model() {
    LevelModel m;
    m.set_cache_ping_mean_ms(2.0);
    // Spoofed answers race the resolver: the injection loop's randomized sleep
    // keeps them inside 0-20 ms with a floor shaped by the sleep granularity.
    m.set_attack({1.25, 20.0});

    // Root servers: no data for b; j sits an order of magnitude closer than
    // the rest, and anycast routing spreads the remaining instances across
    // roughly 55-130 ms of baseline.
    add_servers(m, DnsLevel::Root, ".root-servers.net",
                {{"a", {80, 30, 25}},
                 {"c", {55, 29, 26}},
                 {"d", {63, 30, 27}},
                 {"e", {72, 31, 28}},
                 {"f", {80, 32, 26}},
                 {"g", {88, 29, 27}},
                 {"h", {97, 30, 28}},
                 {"i", {105, 31, 26}},
                 {"j", {12, 6, 5}},
                 {"k", {113, 29, 26}},
                 {"l", {122, 30, 27}},
                 {"m", {130, 31, 28}}});

    // gTLD servers: b is the nearby outlier (~15 ms baseline); the rest are
    // staggered between ~58 and ~106 ms.
    add_servers(m, DnsLevel::Gtld, ".gtld-servers.net",
                {{"a", {58, 13, 11}},
                 {"b", {15, 6, 5}},
                 {"c", {62, 14, 12}},
                 {"d", {67, 15, 13}},
                 {"e", {71, 13, 11}},
                 {"f", {75, 14, 12}},
                 {"g", {80, 15, 13}},
                 {"h", {84, 13, 11}},
                 {"i", {89, 14, 12}},
                 {"j", {93, 15, 13}},
                 {"k", {97, 13, 11}},
                 {"l", {102, 14, 12}},
                 {"m", {106, 15, 13}}});

    // Country-code servers; each country keeps its own distinct window.
    m.set_entry(DnsLevel::Cctld, "ns.cn", {50, 15, 25});
    m.set_entry(DnsLevel::Cctld, "ns.fr", {88, 10, 8});
    m.set_entry(DnsLevel::Cctld, "ns.mx", {148, 12, 10});
    m.set_entry(DnsLevel::Cctld, "ns.ru", {120, 14, 10});
    m.set_entry(DnsLevel::Cctld, "ns.tw", {198, 12, 10});
    m.set_entry(DnsLevel::Cctld, "ns.uk", {70, 9, 8});

    m.set_entry(DnsLevel::Sld, "*", {50, 12, 8});
    m.set_entry(DnsLevel::Host, "*", {55, 8, 6});
    return m;
}

LevelModel cloud_model() {
    LevelModel m;
    m.set_cache_ping_mean_ms(1.0);
    m.set_attack({0.45, 20.0});

    add_servers(m, DnsLevel::Root, ".root-servers.net",
                {{"a", {4, 7, 45}},
                 {"c", {5, 7, 44}},
                 {"d", {4, 8, 46}},
                 {"e", {5, 6, 45}},
                 {"f", {4, 7, 43}},
                 {"g", {6, 7, 45}},
                 {"h", {4, 8, 44}},
                 {"i", {5, 7, 46}},
                 {"j", {4, 6, 45}},
                 {"k", {6, 7, 44}},
                 {"l", {4, 8, 45}},
                 {"m", {5, 7, 43}}});

    add_servers(m, DnsLevel::Gtld, ".gtld-servers.net",
                {{"a", {3, 6, 38}},
                 {"b", {4, 5, 37}},
                 {"c", {3, 6, 39}},
                 {"d", {4, 6, 38}},
                 {"e", {3, 5, 37}},
                 {"f", {4, 6, 38}},
                 {"g", {3, 6, 39}},
                 {"h", {4, 5, 38}},
                 {"i", {3, 6, 37}},
                 {"j", {4, 6, 38}},
                 {"k", {3, 5, 39}},
                 {"l", {4, 6, 37}},
                 {"m", {3, 6, 38}}});

    m.set_entry(DnsLevel::Cctld, "ns.cn", {10, 10, 60});
    m.set_entry(DnsLevel::Cctld, "ns.fr", {8, 6, 30});
    m.set_entry(DnsLevel::Cctld, "ns.mx", {30, 8, 30});
    m.set_entry(DnsLevel::Cctld, "ns.ru", {35, 10, 40});
    m.set_entry(DnsLevel::Cctld, "ns.tw", {40, 10, 40});
    m.set_entry(DnsLevel::Cctld, "ns.uk", {6, 5, 25});

    m.set_entry(DnsLevel::Sld, "*", {5, 5, 30});
    m.set_entry(DnsLevel::Host, "*", {4, 4, 10});
    return m;
}

LevelModel iucc_model() {
    LevelModel m;
    m.set_cache_ping_mean_ms(2.5);
    m.set_attack({0.8, 20.0});

    add_servers(m, DnsLevel::Root, ".root-servers.net",
                {{"a", {40, 12, 25}},
                 {"c", {41, 11, 24}},
                 {"d", {40, 13, 26}},
                 {"e", {42, 12, 25}},
                 {"f", {40, 12, 24}},
                 {"g", {41, 11, 25}},
                 {"h", {40, 13, 24}},
                 {"i", {42, 12, 26}},
                 {"j", {40, 11, 25}},
                 {"k", {41, 12, 24}},
                 {"l", {40, 12, 25}},
                 {"m", {42, 11, 24}}});

    add_servers(m, DnsLevel::Gtld, ".gtld-servers.net",
                {{"a", {42, 10, 22}},
                 {"c", {43, 10, 21}},
                 {"d", {42, 11, 22}},
                 {"e", {44, 10, 23}},
                 {"f", {42, 10, 22}},
                 {"g", {43, 11, 21}},
                 {"h", {42, 10, 22}},
                 {"i", {44, 10, 23}},
                 {"j", {42, 11, 22}},
                 {"k", {43, 10, 21}},
                 {"l", {42, 10, 22}},
                 {"m", {44, 11, 23}}});

    m.set_entry(DnsLevel::Cctld, "ns.cn", {50, 12, 30});
    m.set_entry(DnsLevel::Cctld, "ns.fr", {55, 10, 20});
    m.set_entry(DnsLevel::Cctld, "ns.mx", {90, 10, 25});
    m.set_entry(DnsLevel::Cctld, "ns.ru", {80, 12, 30});
    m.set_entry(DnsLevel::Cctld, "ns.tw", {100, 12, 25});
    m.set_entry(DnsLevel::Cctld, "ns.uk", {48, 8, 18});

    m.set_entry(DnsLevel::Sld, "*", {30, 10, 20});
    m.set_entry(DnsLevel::Host, "*", {20, 6, 10});
    return m;
}

// Per-level totals (contact chain plus client leg) occupy pairwise disjoint
// ranges: host ~[21,41], sld ~[51,81], gtld ~[151,201], cctld ~[221,271],
// root ~[381,465] milliseconds.
LevelModel sep_model() {
    LevelModel m;
    m.set_cache_ping_mean_ms(2.0);
    m.set_attack({1.25, 20.0});
    m.set_entry(DnsLevel::Root, "*", {230, 0.5, 28});
    m.set_entry(DnsLevel::Gtld, "*", {100, 0.5, 18});
    m.set_entry(DnsLevel::Cctld, "*", {170, 0.5, 18});
    m.set_entry(DnsLevel::Sld, "*", {50, 0.5, 28});
    m.set_entry(DnsLevel::Host, "*", {20, 0.5, 17});
    return m;
}

Workload make_workload(std::vector<std::string> domains,
                       std::map<DnsLevel, double> raw_shares) {
    double sum = 0.0;
    for (const auto& [level, share] : raw_shares) sum += share;
    std::map<DnsLevel, double> shares;
    for (const auto& [level, share] : raw_shares) shares[level] = share / sum;

    Workload w;
    w.total_queries = 100000;
    w.ttl_mode = TtlMode::Mixed;
    for (std::string& name : domains) {
        w.domains.push_back({std::move(name), shares});
    }
    return w;
}

const std::vector<std::string> kDefaultDomains = {
    "yahoo.com",     "youtube.com", "facebook.com", "baidu.com",
    "wikipedia.org", "quora.com",   "abc.com",      "example.com",
};

} // namespace

LevelModel builtin_model(const std::string& name) {
    if (name == "local") return local_model();
    if (name == "cloud") return cloud_model();
    if (name == "iucc") return iucc_model();
    if (name == "sep") return sep_model();
    throw ConfigError("unknown profile '" + name + "'");
}

Workload builtin_workload(const std::string& name) {
    if (name == "local") {
        return make_workload(kDefaultDomains, {{DnsLevel::Cache, 41.651},
                                               {DnsLevel::Root, 23.257},
                                               {DnsLevel::Gtld, 13.432},
                                               {DnsLevel::Cctld, 1.644},
                                               {DnsLevel::Sld, 19.87},
                                               {DnsLevel::Host, 0.13}});
    }
    if (name == "cloud") {
        return make_workload(kDefaultDomains, {{DnsLevel::Cache, 16.76},
                                               {DnsLevel::Root, 32.88},
                                               {DnsLevel::Gtld, 19.38},
                                               {DnsLevel::Cctld, 2.872},
                                               {DnsLevel::Sld, 28.072},
                                               {DnsLevel::Host, 0.07}});
    }
    if (name == "iucc") {
        return make_workload(kDefaultDomains, {{DnsLevel::Cache, 30.0},
                                               {DnsLevel::Root, 25.0},
                                               {DnsLevel::Gtld, 18.0},
                                               {DnsLevel::Cctld, 2.0},
                                               {DnsLevel::Sld, 24.8},
                                               {DnsLevel::Host, 0.2}});
    }
    if (name == "sep") {
        return make_workload(kDefaultDomains, {{DnsLevel::Cache, 5.0},
                                               {DnsLevel::Root, 20.0},
                                               {DnsLevel::Gtld, 20.0},
                                               {DnsLevel::Cctld, 20.0},
                                               {DnsLevel::Sld, 20.0},
                                               {DnsLevel::Host, 15.0}});
    }
    throw ConfigError("unknown profile '" + name + "'");
}

const std::vector<std::string>& builtin_profile_names() {
    static const std::vector<std::string> names = {"local", "cloud", "iucc", "sep"};
    return names;
}

} // namespace dnstime
