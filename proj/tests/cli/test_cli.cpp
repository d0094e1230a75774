// End-to-end tests for the dnstime command-line tool. The binary path comes
// in through the DNSTIME_CLI_PATH compile definition; every test works inside
// its own scratch directory so runs are independent and repeatable.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dnstime/cache_split.hpp"
#include "dnstime/kv_config.hpp"
#include "dnstime/tables.hpp"
#include "dnstime/transaction_io.hpp"
#include "dnstime/types.hpp"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace dnstime;

namespace {

dnstime::KvConfig parse_kv(const std::string& text) {
    std::istringstream in(text);
    return dnstime::KvConfig::parse(in);
}

} // namespace


namespace {

const std::string kCli = DNSTIME_CLI_PATH;

int run_cli(const std::string& args, const std::string& workdir = "") {
    std::string cmd;
    if (!workdir.empty()) cmd += "cd '" + workdir + "' && ";
    cmd += "'" + kCli + "' " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::path("cli_scratch") / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "missing file: ", path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::istringstream in(line);
    std::string field;
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

} // namespace

TEST_CASE("help exits 0, usage errors exit 1") {
    CHECK(run_cli("--help") == 0);
    CHECK(run_cli("simulate --help") == 0);
    CHECK(run_cli("--no-such-flag") == 1);
    CHECK(run_cli("simulate") == 1);           // missing required --out
    CHECK(run_cli("frobnicate") == 1);         // unknown subcommand
    CHECK(run_cli("") == 1);                   // a subcommand is required
    CHECK(run_cli("detect --in x.csv --out-dir y --task bogus") == 1);
}

TEST_CASE("--ci demands an explicit seed") {
    const fs::path dir = scratch("ci");
    CHECK(run_cli("simulate --profile local --queries 50 --out tx.csv --ci", dir.string()) == 1);
    CHECK(run_cli("simulate --profile local --queries 50 --out tx.csv --ci --seed 7",
                  dir.string()) == 0);
    CHECK(fs::exists(dir / "tx.csv"));
}

TEST_CASE("configuration errors exit 2 and create nothing") {
    const fs::path dir = scratch("errors");
    SUBCASE("missing input file") {
        CHECK(run_cli("detect --in missing.csv --out-dir out", dir.string()) == 2);
        CHECK_FALSE(fs::exists(dir / "out"));
    }
    SUBCASE("profile and model files are mutually exclusive") {
        CHECK(run_cli("simulate --profile local --model m.kv --workload w.kv --out tx.csv",
                      dir.string()) == 2);
        CHECK_FALSE(fs::exists(dir / "tx.csv"));
    }
    SUBCASE("attack bounds must come as a pair") {
        CHECK(run_cli("simulate --profile local --queries 20 --attack-min-ms 1 --out tx.csv",
                      dir.string()) == 2);
    }
    SUBCASE("analyze refuses an empty data set") {
        std::ofstream empty(dir / "empty.csv");
        empty << "query_id,domain,rtt_us,level,label,contacts\n";
        empty.close();
        CHECK(run_cli("analyze --in empty.csv --out-dir out", dir.string()) == 2);
    }
    SUBCASE("interval needs a domain") {
        std::ofstream one(dir / "one.csv");
        one << "query_id,domain,rtt_us,level,label,contacts\n"
            << "0,d.com,1000,cache,benign,\n";
        one.close();
        CHECK(run_cli("analyze --in one.csv --out-dir out --interval 60:70", dir.string()) == 2);
    }
}

TEST_CASE("identical seeds reproduce byte-identical outputs and manifests") {
    const fs::path a = scratch("repro_a");
    const fs::path b = scratch("repro_b");
    const std::string args =
        "simulate --profile local --queries 400 --seed 11 --out tx.csv --attack-out atk.csv";
    REQUIRE(run_cli(args, a.string()) == 0);
    REQUIRE(run_cli(args, b.string()) == 0);
    CHECK(slurp(a / "tx.csv") == slurp(b / "tx.csv"));
    CHECK(slurp(a / "atk.csv") == slurp(b / "atk.csv"));
    CHECK(slurp(a / "tx.csv.manifest") == slurp(b / "tx.csv.manifest"));

    SUBCASE("a different seed changes the data") {
        const fs::path c = scratch("repro_c");
        REQUIRE(run_cli("simulate --profile local --queries 400 --seed 12 --out tx.csv",
                        c.string()) == 0);
        CHECK(slurp(a / "tx.csv") != slurp(c / "tx.csv"));
    }
}

TEST_CASE("simulate writes parseable transactions honoring overrides") {
    const fs::path dir = scratch("simulate");
    REQUIRE(run_cli("simulate --profile local --queries 250 --ttl-mode long --seed 3 "
                    "--attack-out atk.csv --attack-min-ms 0 --attack-max-ms 20 --out tx.csv",
                    dir.string()) == 0);
    const auto benign = read_transactions_file((dir / "tx.csv").string());
    REQUIRE(benign.size() == 250);
    for (const Transaction& tx : benign) {
        CHECK(tx.level == DnsLevel::Cache); // long ttl pins everything to cache
        CHECK(tx.label == Label::Benign);
    }
    const auto attack = read_transactions_file((dir / "atk.csv").string());
    REQUIRE(attack.size() == 250);
    for (const Transaction& tx : attack) {
        CHECK(tx.label == Label::Attack);
        CHECK(tx.rtt_us >= 1);
        CHECK(tx.rtt_us <= 20000);
    }
    // The manifest records the overridden attack window.
    const KvConfig manifest = parse_kv(slurp(dir / "tx.csv.manifest"));
    CHECK(manifest.require("command") == "simulate");
    CHECK(manifest.require_double("attack.min_ms") == doctest::Approx(0.0));
    CHECK(manifest.require_int("queries") == 250);
    CHECK(manifest.contains("output.attack_transactions.fnv1a"));
}

TEST_CASE("emitted packet logs ingest back into the original transactions") {
    const fs::path dir = scratch("roundtrip");
    REQUIRE(run_cli("simulate --profile local --queries 300 --seed 21 --out tx.csv "
                    "--emit-logs logs",
                    dir.string()) == 0);
    REQUIRE(run_cli("ingest --client logs_client.csv --resolver logs_resolver.csv "
                    "--registry logs_registry.csv --out ingested.csv "
                    "--accumulated-out accumulated.csv",
                    dir.string()) == 0);

    const auto original = read_transactions_file((dir / "tx.csv").string());
    const auto ingested = read_transactions_file((dir / "ingested.csv").string());
    CHECK(original == ingested);

    SUBCASE("the ingest manifest reports clean correlation") {
        const KvConfig manifest = parse_kv(slurp(dir / "ingested.csv.manifest"));
        CHECK(manifest.require_int("trees") == 300);
        CHECK(manifest.require_int("unmatched.client_queries") == 0);
        CHECK(manifest.require_int("unmatched.client_responses") == 0);
        CHECK(manifest.require_int("unmatched.resolver_records") == 0);
        CHECK(manifest.require_int("ambiguous_pairings") == 0);
    }
    SUBCASE("accumulated rtts cover every resolving level once per transaction") {
        const auto lines = lines_of(slurp(dir / "accumulated.csv"));
        REQUIRE(!lines.empty());
        CHECK(lines[0] == "query_id,domain,level,accumulated_rtt_us");
        std::size_t resolve_contacts = 0;
        for (const Transaction& tx : original) resolve_contacts += tx.contacts.size();
        CHECK(lines.size() - 1 == resolve_contacts);
    }
}

TEST_CASE("analyze emits tables matching an in-process computation") {
    const fs::path dir = scratch("analyze");
    REQUIRE(run_cli("simulate --profile local --queries 3000 --seed 5 --out tx.csv",
                    dir.string()) == 0);
    REQUIRE(run_cli("analyze --in tx.csv --out-dir out --ping-ms 2 "
                    "--domain yahoo.com --interval 60:120",
                    dir.string()) == 0);

    for (const char* name : {"hist_coarse.csv", "hist_fine.csv", "cache_split.txt",
                             "domain_tables.csv", "interval_table.csv", "manifest.txt"}) {
        CAPTURE(name);
        CHECK(fs::exists(dir / "out" / name));
    }

    const auto txs = read_transactions_file((dir / "tx.csv").string());

    SUBCASE("cache split matches the library") {
        const CacheSplit split = split_cache_resolve(txs, 2000);
        const KvConfig kv = parse_kv(slurp(dir / "out" / "cache_split.txt"));
        CHECK(kv.require_int("threshold_us") == split.threshold_us);
        CHECK(kv.require_int("gap_width_us") == split.gap_width_us);
        CHECK(kv.require_int("low_confidence") == (split.low_confidence ? 1 : 0));
        CHECK(kv.require_int("total") == static_cast<std::int64_t>(txs.size()));
    }
    SUBCASE("interval table matches the library") {
        const IntervalTable table = interval_table(txs, "yahoo.com", 60000, 120000);
        const auto lines = lines_of(slurp(dir / "out" / "interval_table.csv"));
        REQUIRE(lines.size() >= 2);
        CHECK(lines[0] ==
              "domain,lo_us,hi_us,domain_total,interval_total,interval_probability,level,share");
        const auto fields = split_csv(lines[1]);
        REQUIRE(fields.size() == 8);
        CHECK(fields[0] == "yahoo.com");
        CHECK(std::stoll(fields[3]) == table.domain_total);
        CHECK(std::stoll(fields[4]) == table.interval_total);
        CHECK(std::stod(fields[5]) == doctest::Approx(table.interval_probability).epsilon(1e-6));
        CHECK(lines.size() - 1 == std::max<std::size_t>(table.level_shares.size(), 1));
    }
    SUBCASE("domain tables match the library") {
        const DomainTable table = domain_table(txs, "yahoo.com");
        bool seen = false;
        for (const auto& line : lines_of(slurp(dir / "out" / "domain_tables.csv"))) {
            const auto fields = split_csv(line);
            if (fields.size() != 4 || fields[0] != "yahoo.com") continue;
            seen = true;
            CHECK(std::stoll(fields[1]) == table.total);
            const DnsLevel level = level_from_string(fields[2]);
            CHECK(std::stod(fields[3]) ==
                  doctest::Approx(table.level_shares.at(level)).epsilon(1e-6));
        }
        CHECK(seen);
    }
}

TEST_CASE("detect writes metrics, trials, a model, and a manifest") {
    const fs::path dir = scratch("detect");
    REQUIRE(run_cli("simulate --profile local --queries 2000 --ttl-mode long --seed 8 "
                    "--out tx.csv --attack-out atk.csv",
                    dir.string()) == 0);
    REQUIRE(run_cli("detect --in tx.csv --in atk.csv --task attack --classifier knn "
                    "--trials 4 --seed 9 --out-dir out",
                    dir.string()) == 0);

    for (const char* name : {"metrics.csv", "trials.csv", "model.txt", "report.txt",
                             "manifest.txt"}) {
        CAPTURE(name);
        CHECK(fs::exists(dir / "out" / name));
    }

    const auto metric_lines = lines_of(slurp(dir / "out" / "metrics.csv"));
    REQUIRE(metric_lines.size() == 6);
    CHECK(metric_lines[0] == "metric,value");
    const auto acc_fields = split_csv(metric_lines[1]);
    REQUIRE(acc_fields.size() == 2);
    CHECK(acc_fields[0] == "accuracy");
    const double accuracy = std::stod(acc_fields[1]);
    CHECK(accuracy >= 0.9); // cache vs spoof separates easily
    CHECK(accuracy <= 1.0);

    const auto trial_lines = lines_of(slurp(dir / "out" / "trials.csv"));
    CHECK(trial_lines.size() == 5); // header + 4 trials

    const auto model_lines = lines_of(slurp(dir / "out" / "model.txt"));
    REQUIRE(!model_lines.empty());
    CHECK(model_lines[0] == "dnstime-model v1");

    SUBCASE("rf model heads differ from knn") {
        REQUIRE(run_cli("detect --in tx.csv --in atk.csv --task attack --classifier rf "
                        "--trials 2 --trees 5 --depth 3 --seed 9 --out-dir out_rf",
                        dir.string()) == 0);
        const auto rf_lines = lines_of(slurp(dir / "out_rf" / "model.txt"));
        REQUIRE(rf_lines.size() >= 2);
        CHECK(rf_lines[0] == "dnstime-model v1");
        CHECK(rf_lines[1] == "type = random_forest");
    }
    SUBCASE("detect runs are reproducible") {
        REQUIRE(run_cli("detect --in tx.csv --in atk.csv --task attack --classifier knn "
                        "--trials 4 --seed 9 --out-dir out_again",
                        dir.string()) == 0);
        CHECK(slurp(dir / "out" / "metrics.csv") == slurp(dir / "out_again" / "metrics.csv"));
        CHECK(slurp(dir / "out" / "trials.csv") == slurp(dir / "out_again" / "trials.csv"));
    }
}

TEST_CASE("sweep emits the full alpha grid with non-increasing success rates") {
    const fs::path dir = scratch("sweep");
    REQUIRE(run_cli("simulate --profile local --queries 3000 --seed 2 --out tx.csv",
                    dir.string()) == 0);
    REQUIRE(run_cli("sweep --in tx.csv --out sweep.csv", dir.string()) == 0);

    const auto lines = lines_of(slurp(dir / "sweep.csv"));
    REQUIRE(lines.size() == 18); // header + 17 grid points (0 to 0.08 by 0.005)
    CHECK(lines[0] == "alpha,retained_bins,success_rate");
    double prev_rate = 1.1;
    long prev_retained = 1000;
    double expected_alpha = 0.0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split_csv(lines[i]);
        REQUIRE(fields.size() == 3);
        CHECK(std::stod(fields[0]) == doctest::Approx(expected_alpha).epsilon(1e-9));
        const long retained = std::stol(fields[1]);
        const double rate = std::stod(fields[2]);
        CHECK(retained <= prev_retained);
        CHECK(rate <= prev_rate + 1e-12);
        prev_retained = retained;
        prev_rate = rate;
        expected_alpha += 0.005;
    }
}

TEST_CASE("report produces plot-ready histograms and a summary") {
    const fs::path dir = scratch("report");
    REQUIRE(run_cli("simulate --profile local --queries 1500 --seed 4 --out tx.csv "
                    "--attack-out atk.csv",
                    dir.string()) == 0);
    REQUIRE(run_cli("detect --in tx.csv --in atk.csv --classifier knn --trials 2 --seed 1 "
                    "--out-dir det",
                    dir.string()) == 0);
    REQUIRE(run_cli("report --in tx.csv --attack-in atk.csv --metrics det/metrics.csv "
                    "--out-dir rep",
                    dir.string()) == 0);

    for (const char* name : {"cache_hist.csv", "resolve_hist.csv", "cache_fine.csv",
                             "attack_fine.csv", "metrics.csv", "summary.txt", "manifest.txt",
                             "domain_yahoo_com.csv", "domain_example_com.csv"}) {
        CAPTURE(name);
        CHECK(fs::exists(dir / "rep" / name));
    }
    CHECK(slurp(dir / "rep" / "metrics.csv") == slurp(dir / "det" / "metrics.csv"));
    const std::string summary = slurp(dir / "rep" / "summary.txt");
    CHECK(summary.find("transactions: 1500 benign, 1500 attack") != std::string::npos);

    SUBCASE("report tolerates a header-only input") {
        const fs::path dir2 = scratch("report_empty");
        std::ofstream empty(dir2 / "empty.csv");
        empty << "query_id,domain,rtt_us,level,label,contacts\n";
        empty.close();
        CHECK(run_cli("report --in empty.csv --out-dir rep", dir2.string()) == 0);
        CHECK(fs::exists(dir2 / "rep" / "summary.txt"));
        const std::string s = slurp(dir2 / "rep" / "summary.txt");
        CHECK(s.find("transactions: 0 benign, 0 attack") != std::string::npos);
    }
}
