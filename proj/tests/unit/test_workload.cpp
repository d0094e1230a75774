#include "dnstime/error.hpp"
#include "dnstime/workload.hpp"

#include <doctest.h>

#include <sstream>

using namespace dnstime;

namespace {

dnstime::KvConfig reparse(const dnstime::KvConfig& cfg) {
    std::ostringstream out;
    cfg.write(out);
    std::istringstream in(out.str());
    return dnstime::KvConfig::parse(in);
}

} // namespace


namespace {

Workload mixed_workload() {
    Workload w;
    w.total_queries = 1000;
    w.ttl_mode = TtlMode::Mixed;
    w.domains.push_back({"example.com",
                         {{DnsLevel::Cache, 0.5}, {DnsLevel::Root, 0.25}, {DnsLevel::Sld, 0.25}}});
    return w;
}

} // namespace

TEST_CASE("ttl mode names round-trip") {
    CHECK(ttl_mode_from_string("long") == TtlMode::LongTtl);
    CHECK(ttl_mode_from_string("zero") == TtlMode::ZeroTtl);
    CHECK(ttl_mode_from_string("mixed") == TtlMode::Mixed);
    CHECK(to_string(TtlMode::ZeroTtl) == "zero");
    CHECK(ttl_mode_from_string(to_string(TtlMode::LongTtl)) == TtlMode::LongTtl);
    CHECK_THROWS_AS(ttl_mode_from_string("forever"), ConfigError);
}

TEST_CASE("mixed mode keeps the configured shares") {
    const Workload w = mixed_workload();
    const auto shares = w.effective_shares(w.domains[0]);
    CHECK(shares.at(DnsLevel::Cache) == doctest::Approx(0.5));
    CHECK(shares.at(DnsLevel::Root) == doctest::Approx(0.25));
    CHECK(shares.at(DnsLevel::Sld) == doctest::Approx(0.25));
}

TEST_CASE("long ttl collapses everything onto the cache") {
    Workload w = mixed_workload();
    w.ttl_mode = TtlMode::LongTtl;
    const auto shares = w.effective_shares(w.domains[0]);
    REQUIRE(shares.size() == 1);
    CHECK(shares.at(DnsLevel::Cache) == doctest::Approx(1.0));
}

TEST_CASE("zero ttl drops the cache and renormalizes the rest") {
    Workload w = mixed_workload();
    w.ttl_mode = TtlMode::ZeroTtl;
    const auto shares = w.effective_shares(w.domains[0]);
    REQUIRE(shares.size() == 2);
    CHECK(shares.at(DnsLevel::Root) == doctest::Approx(0.5));
    CHECK(shares.at(DnsLevel::Sld) == doctest::Approx(0.5));
}

TEST_CASE("zero ttl over a cache-only domain cannot be renormalized") {
    Workload w;
    w.total_queries = 10;
    w.ttl_mode = TtlMode::ZeroTtl;
    w.domains.push_back({"cached.com", {{DnsLevel::Cache, 1.0}}});
    CHECK_THROWS_AS(w.effective_shares(w.domains[0]), ConfigError);
    CHECK_THROWS_AS(w.validate(), ConfigError);
}

TEST_CASE("validate rejects malformed workloads") {
    SUBCASE("valid workload passes") { CHECK_NOTHROW(mixed_workload().validate()); }
    SUBCASE("no domains") {
        Workload w;
        w.total_queries = 10;
        CHECK_THROWS_AS(w.validate(), ConfigError);
    }
    SUBCASE("non-positive total") {
        Workload w = mixed_workload();
        w.total_queries = 0;
        CHECK_THROWS_AS(w.validate(), ConfigError);
    }
    SUBCASE("negative share") {
        Workload w = mixed_workload();
        w.domains[0].level_shares[DnsLevel::Root] = -0.25;
        w.domains[0].level_shares[DnsLevel::Sld] = 0.75;
        CHECK_THROWS_AS(w.validate(), ConfigError);
    }
    SUBCASE("shares that do not sum to one") {
        Workload w = mixed_workload();
        w.domains[0].level_shares[DnsLevel::Sld] = 0.3;
        CHECK_THROWS_AS(w.validate(), ConfigError);
    }
    SUBCASE("tiny rounding slack is tolerated") {
        Workload w = mixed_workload();
        w.domains[0].level_shares[DnsLevel::Sld] = 0.25 + 5e-10;
        CHECK_NOTHROW(w.validate());
    }
}

TEST_CASE("kv round-trip preserves domains, totals, and ttl mode") {
    Workload w = mixed_workload();
    w.domains.push_back({"other.org", {{DnsLevel::Cache, 0.9}, {DnsLevel::Host, 0.1}}});
    w.ttl_mode = TtlMode::ZeroTtl;

    const KvConfig kv = w.to_kv();
    CHECK(kv.require_int("total_queries") == 1000);
    CHECK(kv.require("ttl_mode") == "zero");
    CHECK(kv.contains("domain.example.com.cache"));

    const Workload back = Workload::from_kv(reparse(kv));
    CHECK(back.total_queries == w.total_queries);
    CHECK(back.ttl_mode == w.ttl_mode);
    REQUIRE(back.domains.size() == 2);
    // from_kv stores domains sorted by name; compare as sets of specs.
    for (const DomainSpec& spec : w.domains) {
        bool found = false;
        for (const DomainSpec& got : back.domains) {
            if (got == spec) found = true;
        }
        CHECK(found);
    }
}
