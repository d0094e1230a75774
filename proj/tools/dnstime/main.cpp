// dnstime — DNS response-timing analysis toolkit.
//
// Subcommands:
//   simulate  generate benign (and optionally spoofed) transactions
//   ingest    correlate client/resolver packet logs into transactions
//   analyze   histograms, cache/resolve split, per-domain tables
//   detect    train and evaluate classifiers over the RTT feature
//   sweep     alpha sweep of the retention mask's attack success rate
//   report    plot-ready histogram CSVs plus a text summary
//
// Every run writes a manifest (parameters, seed, input fingerprints) from
// which an identical re-run can be reproduced byte for byte. Exit codes:
// 0 success, 1 usage error, 2 data/configuration error.

#include "dnstime/alpha_mask.hpp"
#include "dnstime/cache_split.hpp"
#include "dnstime/correlate.hpp"
#include "dnstime/error.hpp"
#include "dnstime/evaluate.hpp"
#include "dnstime/histogram.hpp"
#include "dnstime/knn.hpp"
#include "dnstime/level_model.hpp"
#include "dnstime/log_record.hpp"
#include "dnstime/manifest.hpp"
#include "dnstime/profiles.hpp"
#include "dnstime/random_forest.hpp"
#include "dnstime/rng.hpp"
#include "dnstime/simulator.hpp"
#include "dnstime/tables.hpp"
#include "dnstime/transaction_io.hpp"
#include "dnstime/types.hpp"
#include "dnstime/workload.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace dnstime;

constexpr const char* kFormatVersion = "1";

std::string fmt_double(double value, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", precision, value);
    return buf;
}

std::vector<std::string> split_on(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t at = text.find(sep, start);
        if (at == std::string::npos) {
            parts.push_back(text.substr(start));
            return parts;
        }
        parts.push_back(text.substr(start, at - start));
        start = at + 1;
    }
}

double parse_double(const std::string& text, const std::string& what) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ConfigError(what + " is not a number: '" + text + "'");
    }
    return value;
}

std::int64_t parse_i64(const std::string& text, const std::string& what) {
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ConfigError(what + " is not an integer: '" + text + "'");
    }
    return value;
}

// "coarse", "fine", or "lo_us:hi_us:width_us".
Binning binning_from_string(const std::string& text) {
    if (text == "coarse") return Binning::coarse();
    if (text == "fine") return Binning::fine();
    const auto parts = split_on(text, ':');
    if (parts.size() != 3) {
        throw ConfigError("binning must be 'coarse', 'fine', or lo_us:hi_us:width_us, got '" +
                          text + "'");
    }
    const Binning binning{parse_i64(parts[0], "binning lo"), parse_i64(parts[1], "binning hi"),
                          parse_i64(parts[2], "binning width")};
    binning.validate();
    return binning;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file: " + path);
    return out;
}

void finish_output(std::ofstream& out, const std::string& path) {
    if (!out.flush()) throw ConfigError("failed writing output file: " + path);
}

void require_input_file(const std::string& path) {
    if (!std::filesystem::exists(path)) throw ConfigError("input file does not exist: " + path);
}

std::string default_manifest_path(const std::string& primary_output) {
    return primary_output + ".manifest";
}

void write_histogram_file(const std::string& path, const Histogram& histogram,
                          Manifest& manifest, const std::string& name) {
    std::ofstream out = open_output(path);
    write_histogram_csv(out, histogram);
    finish_output(out, path);
    manifest.add_output(name, path);
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    std::string profile;
    std::string model_path;
    std::string workload_path;
    std::int64_t queries = 0; // 0 = keep the workload's total
    std::string ttl_mode;
    std::string out;
    std::string attack_out;
    double attack_min_ms = -1.0;
    double attack_max_ms = -1.0;
    std::string emit_logs_prefix;
    std::string manifest_path;
    std::uint64_t seed = 0;
};

// Deterministic synthetic addresses for emitted logs: the client and resolver
// get fixed addresses, upstream servers are numbered in sorted-name order.
std::string synthetic_address(std::size_t index) {
    return "10.1." + std::to_string(index / 250) + "." + std::to_string(index % 250 + 1);
}

void emit_logs(const std::string& prefix, std::span<const Transaction> benign,
               Manifest& manifest) {
    const std::string client_addr = "10.0.0.2";
    const std::string resolver_addr = "10.0.0.1";

    std::map<std::string, DnsLevel> servers; // name -> level
    for (const Transaction& tx : benign) {
        for (const Contact& contact : tx.contacts) servers.emplace(contact.server, contact.level);
    }
    std::map<std::string, std::string> address_of;
    ServerRegistry registry;
    std::size_t next = 0;
    for (const auto& [name, level] : servers) {
        const std::string address = synthetic_address(next++);
        address_of[name] = address;
        registry.add(address, level, name);
    }

    std::vector<LogRecord> client_log;
    std::vector<LogRecord> resolver_log;
    std::int64_t t0 = 1;
    for (const Transaction& tx : benign) {
        client_log.push_back({t0, Direction::Query, tx.query_id, tx.domain, client_addr,
                              resolver_addr});
        client_log.push_back({t0 + tx.rtt_us, Direction::Response, tx.query_id, tx.domain,
                              resolver_addr, client_addr});
        std::int64_t chain_total = 0;
        for (const Contact& contact : tx.contacts) chain_total += contact.rtt_us;
        // The client<->resolver leg splits evenly around the upstream chain.
        std::int64_t t = t0 + (tx.rtt_us - chain_total) / 2;
        for (const Contact& contact : tx.contacts) {
            const std::string& server_addr = address_of.at(contact.server);
            resolver_log.push_back({t, Direction::Query, tx.query_id, tx.domain, resolver_addr,
                                    server_addr});
            t += contact.rtt_us;
            resolver_log.push_back({t, Direction::Response, tx.query_id, tx.domain, server_addr,
                                    resolver_addr});
        }
        // Wide spacing keeps same-key client windows from ever overlapping.
        t0 += 1'000'000;
    }

    const std::string client_path = prefix + "_client.csv";
    const std::string resolver_path = prefix + "_resolver.csv";
    const std::string registry_path = prefix + "_registry.csv";
    std::ofstream client_out = open_output(client_path);
    write_log(client_out, client_log);
    finish_output(client_out, client_path);
    std::ofstream resolver_out = open_output(resolver_path);
    write_log(resolver_out, resolver_log);
    finish_output(resolver_out, resolver_path);
    std::ofstream registry_out = open_output(registry_path);
    registry.write(registry_out);
    finish_output(registry_out, registry_path);
    manifest.add_output("client_log", client_path);
    manifest.add_output("resolver_log", resolver_path);
    manifest.add_output("registry", registry_path);
}

int run_simulate(const SimulateArgs& args) {
    const bool has_files = !args.model_path.empty() || !args.workload_path.empty();
    if (!args.profile.empty() && has_files) {
        throw ConfigError("use either --profile or --model/--workload, not both");
    }
    if (has_files && (args.model_path.empty() || args.workload_path.empty())) {
        throw ConfigError("--model and --workload must be given together");
    }
    if (args.profile.empty() && !has_files) {
        throw ConfigError("one of --profile or --model/--workload is required");
    }

    Manifest manifest;
    manifest.set("command", "simulate");
    manifest.set("format", kFormatVersion);
    manifest.set_int("seed", static_cast<std::int64_t>(args.seed));

    LevelModel model;
    Workload workload;
    if (!args.profile.empty()) {
        model = builtin_model(args.profile);
        workload = builtin_workload(args.profile);
        manifest.set("profile", args.profile);
    } else {
        require_input_file(args.model_path);
        require_input_file(args.workload_path);
        model = LevelModel::from_kv(KvConfig::parse_file(args.model_path));
        workload = Workload::from_kv(KvConfig::parse_file(args.workload_path));
        manifest.add_input("model", args.model_path);
        manifest.add_input("workload", args.workload_path);
    }
    if (args.queries > 0) workload.total_queries = args.queries;
    if (!args.ttl_mode.empty()) workload.ttl_mode = ttl_mode_from_string(args.ttl_mode);
    if (args.attack_min_ms >= 0.0 || args.attack_max_ms >= 0.0) {
        if (args.attack_min_ms < 0.0 || args.attack_max_ms < 0.0) {
            throw ConfigError("--attack-min-ms and --attack-max-ms must be given together");
        }
        model.set_attack({args.attack_min_ms, args.attack_max_ms});
    }
    model.validate();
    workload.validate();

    manifest.set_int("queries", workload.total_queries);
    manifest.set("ttl_mode", std::string(to_string(workload.ttl_mode)));
    if (model.has_attack()) {
        manifest.set_double("attack.min_ms", model.attack().min_ms);
        manifest.set_double("attack.max_ms", model.attack().max_ms);
    }

    const std::vector<Transaction> benign = simulate_benign(workload, model, args.seed);
    write_transactions_file(args.out, benign);
    manifest.add_output("transactions", args.out);

    if (!args.attack_out.empty()) {
        const std::vector<Transaction> attack =
            simulate_attack(benign, model, derive_seed(args.seed, 1));
        write_transactions_file(args.attack_out, attack);
        manifest.add_output("attack_transactions", args.attack_out);
    }
    if (!args.emit_logs_prefix.empty()) {
        emit_logs(args.emit_logs_prefix, benign, manifest);
    }

    const std::string manifest_path =
        args.manifest_path.empty() ? default_manifest_path(args.out) : args.manifest_path;
    manifest.write_file(manifest_path);
    std::cout << "simulated " << benign.size() << " benign transactions -> " << args.out << "\n";
    return 0;
}

// ------------------------------------------------------------------ ingest

struct IngestArgs {
    std::string client_path;
    std::string resolver_path;
    std::string registry_path;
    std::string out;
    std::string accumulated_out;
    std::string manifest_path;
};

int run_ingest(const IngestArgs& args) {
    require_input_file(args.client_path);
    require_input_file(args.resolver_path);
    require_input_file(args.registry_path);

    const std::vector<LogRecord> client = parse_log_file(args.client_path);
    const std::vector<LogRecord> resolver = parse_log_file(args.resolver_path);
    const ServerRegistry registry = ServerRegistry::parse_file(args.registry_path);

    CorrelationResult correlated = correlate(client, resolver);
    std::vector<Transaction> transactions;
    transactions.reserve(correlated.trees.size());
    for (ResolutionTree& tree : correlated.trees) {
        resolve_contact_levels(tree, registry);
        transactions.push_back(tag_level(tree));
    }

    Manifest manifest;
    manifest.set("command", "ingest");
    manifest.set("format", kFormatVersion);
    manifest.add_input("client_log", args.client_path);
    manifest.add_input("resolver_log", args.resolver_path);
    manifest.add_input("registry", args.registry_path);
    manifest.set_int("trees", static_cast<std::int64_t>(correlated.trees.size()));
    manifest.set_int("unmatched.client_queries",
                     static_cast<std::int64_t>(correlated.unmatched_client_queries));
    manifest.set_int("unmatched.client_responses",
                     static_cast<std::int64_t>(correlated.unmatched_client_responses));
    manifest.set_int("unmatched.resolver_records",
                     static_cast<std::int64_t>(correlated.unmatched_resolver_records));
    manifest.set_int("ambiguous_pairings",
                     static_cast<std::int64_t>(correlated.ambiguous_pairings));

    write_transactions_file(args.out, transactions);
    manifest.add_output("transactions", args.out);

    if (!args.accumulated_out.empty()) {
        std::ofstream out = open_output(args.accumulated_out);
        out << "query_id,domain,level,accumulated_rtt_us\n";
        for (const ResolutionTree& tree : correlated.trees) {
            for (const auto& [level, rtt] : accumulate_rtt(tree)) {
                out << tree.client_query.qid << ',' << tree.client_query.domain << ','
                    << to_string(level) << ',' << rtt << "\n";
            }
        }
        finish_output(out, args.accumulated_out);
        manifest.add_output("accumulated", args.accumulated_out);
    }

    const std::string manifest_path =
        args.manifest_path.empty() ? default_manifest_path(args.out) : args.manifest_path;
    manifest.write_file(manifest_path);

    std::cout << "correlated " << correlated.trees.size() << " transactions -> " << args.out
              << "\n"
              << "unmatched: " << correlated.unmatched_client_queries << " client queries, "
              << correlated.unmatched_client_responses << " client responses, "
              << correlated.unmatched_resolver_records << " resolver records; "
              << correlated.ambiguous_pairings << " ambiguous pairings\n";
    return 0;
}

// ----------------------------------------------------------------- analyze

struct AnalyzeArgs {
    std::vector<std::string> inputs;
    std::string out_dir;
    double ping_ms = 2.0;
    std::string domain;
    std::string interval; // "lo:hi" in milliseconds
    std::string coarse = "coarse";
    std::string fine = "fine";
};

std::vector<Transaction> read_merged(const std::vector<std::string>& paths) {
    for (const std::string& path : paths) require_input_file(path);
    std::vector<Transaction> merged;
    for (const std::string& path : paths) {
        std::vector<Transaction> part = read_transactions_file(path);
        merged.insert(merged.end(), std::make_move_iterator(part.begin()),
                      std::make_move_iterator(part.end()));
    }
    return merged;
}

int run_analyze(const AnalyzeArgs& args) {
    if (!args.interval.empty() && args.domain.empty()) {
        throw ConfigError("--interval requires --domain");
    }
    const Binning coarse = binning_from_string(args.coarse);
    const Binning fine = binning_from_string(args.fine);
    const std::vector<Transaction> transactions = read_merged(args.inputs);
    if (transactions.empty()) throw DataError("no transactions to analyze");

    std::filesystem::create_directories(args.out_dir);
    const auto in_dir = [&](const char* name) {
        return (std::filesystem::path(args.out_dir) / name).string();
    };

    Manifest manifest;
    manifest.set("command", "analyze");
    manifest.set("format", kFormatVersion);
    for (std::size_t i = 0; i < args.inputs.size(); ++i) {
        manifest.add_input("transactions" + std::to_string(i), args.inputs[i]);
    }
    manifest.set_double("ping_ms", args.ping_ms);

    write_histogram_file(in_dir("hist_coarse.csv"), build_histogram(transactions, coarse),
                         manifest, "hist_coarse");
    write_histogram_file(in_dir("hist_fine.csv"), build_histogram(transactions, fine), manifest,
                         "hist_fine");

    const std::int64_t ping_us = static_cast<std::int64_t>(std::llround(args.ping_ms * 1000.0));
    const CacheSplit split = split_cache_resolve(transactions, ping_us);
    std::int64_t cache_consistent = 0;
    for (const Transaction& tx : transactions) {
        if (is_cache_consistent(split, tx.rtt_us)) ++cache_consistent;
    }
    {
        KvConfig kv;
        kv.set_int("threshold_us", split.threshold_us);
        kv.set_int("ping_mean_us", split.ping_mean_us);
        kv.set_int("gap_width_us", split.gap_width_us);
        kv.set_int("low_confidence", split.low_confidence ? 1 : 0);
        kv.set_int("cache_consistent", cache_consistent);
        kv.set_int("total", static_cast<std::int64_t>(transactions.size()));
        const std::string path = in_dir("cache_split.txt");
        std::ofstream out = open_output(path);
        kv.write(out);
        finish_output(out, path);
        manifest.add_output("cache_split", path);
    }

    {
        std::set<std::string> domains;
        for (const Transaction& tx : transactions) domains.insert(tx.domain);
        const std::string path = in_dir("domain_tables.csv");
        std::ofstream out = open_output(path);
        out << "domain,total,level,share\n";
        for (const std::string& domain : domains) {
            const DomainTable table = domain_table(transactions, domain);
            for (const auto& [level, share] : table.level_shares) {
                out << table.domain << ',' << table.total << ',' << to_string(level) << ','
                    << fmt_double(share, 9) << "\n";
            }
        }
        finish_output(out, path);
        manifest.add_output("domain_tables", path);
    }

    if (!args.domain.empty() && !args.interval.empty()) {
        const auto parts = split_on(args.interval, ':');
        if (parts.size() != 2) {
            throw ConfigError("--interval must be lo:hi in milliseconds, got '" + args.interval +
                              "'");
        }
        const std::int64_t lo_us =
            static_cast<std::int64_t>(std::llround(parse_double(parts[0], "interval lo") * 1000));
        const std::int64_t hi_us =
            static_cast<std::int64_t>(std::llround(parse_double(parts[1], "interval hi") * 1000));
        const IntervalTable table = interval_table(transactions, args.domain, lo_us, hi_us);
        const std::string path = in_dir("interval_table.csv");
        std::ofstream out = open_output(path);
        out << "domain,lo_us,hi_us,domain_total,interval_total,interval_probability,level,share\n";
        const std::string base = table.domain + ',' + std::to_string(table.lo_us) + ',' +
                                 std::to_string(table.hi_us) + ',' +
                                 std::to_string(table.domain_total) + ',' +
                                 std::to_string(table.interval_total) + ',' +
                                 fmt_double(table.interval_probability, 9);
        if (table.level_shares.empty()) {
            out << base << ",,\n";
        } else {
            for (const auto& [level, share] : table.level_shares) {
                out << base << ',' << to_string(level) << ',' << fmt_double(share, 9) << "\n";
            }
        }
        finish_output(out, path);
        manifest.add_output("interval_table", path);
        manifest.set("interval.domain", args.domain);
        manifest.set_int("interval.lo_us", lo_us);
        manifest.set_int("interval.hi_us", hi_us);
    }

    manifest.write_file(in_dir("manifest.txt"));
    std::cout << "analyzed " << transactions.size() << " transactions -> " << args.out_dir
              << "\n";
    return 0;
}

// ------------------------------------------------------------------ detect

struct DetectArgs {
    std::vector<std::string> inputs;
    std::string out_dir;
    std::string task = "attack";
    std::string classifier = "rf";
    std::string benign_scope = "cache";
    std::string binning; // empty = per-task default
    int trials = 10;
    double train_fraction = 0.8;
    int k = 5;
    int trees = 50;
    int depth = 8;
    double alpha = 0.005;
    std::uint64_t seed = 0;
};

int run_detect(const DetectArgs& args) {
    const std::vector<Transaction> all = read_merged(args.inputs);

    // Assemble the task's labeled points.
    std::vector<TrainPoint> points;
    std::optional<int> positive_label;
    if (args.task == "attack") {
        for (const Transaction& tx : all) {
            if (tx.label == Label::Attack) {
                points.push_back({tx.rtt_us, 0});
            } else if (args.benign_scope == "all" || tx.level == DnsLevel::Cache) {
                points.push_back({tx.rtt_us, 1});
            }
        }
        positive_label = 0;
    } else if (args.task == "cache") {
        for (const Transaction& tx : all) {
            if (tx.label != Label::Benign) continue;
            points.push_back({tx.rtt_us, tx.level == DnsLevel::Cache ? 1 : 0});
        }
        positive_label = 0; // a resolve answer mistaken for cache is the alarm case
    } else { // level
        for (const Transaction& tx : all) {
            if (tx.label != Label::Benign || tx.level == DnsLevel::Cache) continue;
            points.push_back({tx.rtt_us, static_cast<int>(tx.level)});
        }
    }

    EvalParams params;
    params.trials = args.trials;
    params.train_fraction = args.train_fraction;
    params.seed = args.seed;
    params.positive_label = positive_label;
    params.knn_k = args.k;
    params.forest.tree_count = args.trees;
    params.forest.max_depth = args.depth;
    params.alpha = args.alpha;
    params.binning = args.binning.empty()
                         ? (args.task == "attack" ? Binning::fine() : Binning::coarse())
                         : binning_from_string(args.binning);
    if (args.classifier == "knn") {
        params.classifier = ClassifierKind::Knn;
    } else if (args.classifier == "rf") {
        params.classifier = ClassifierKind::RandomForest;
    } else if (args.classifier == "mask") {
        params.classifier = ClassifierKind::MaskAlpha;
    } else {
        params.classifier = ClassifierKind::MaskNaive;
    }

    const EvaluationOutcome outcome = evaluate(points, params);

    std::filesystem::create_directories(args.out_dir);
    const auto in_dir = [&](const char* name) {
        return (std::filesystem::path(args.out_dir) / name).string();
    };

    Manifest manifest;
    manifest.set("command", "detect");
    manifest.set("format", kFormatVersion);
    for (std::size_t i = 0; i < args.inputs.size(); ++i) {
        manifest.add_input("transactions" + std::to_string(i), args.inputs[i]);
    }
    manifest.set("task", args.task);
    manifest.set("classifier", args.classifier);
    manifest.set("benign_scope", args.benign_scope);
    manifest.set_int("trials", args.trials);
    manifest.set_double("train_fraction", args.train_fraction);
    manifest.set_int("knn_k", args.k);
    manifest.set_int("forest.trees", args.trees);
    manifest.set_int("forest.depth", args.depth);
    manifest.set_double("alpha", args.alpha);
    manifest.set_int("seed", static_cast<std::int64_t>(args.seed));
    manifest.set_int("points", static_cast<std::int64_t>(points.size()));

    {
        const std::string path = in_dir("metrics.csv");
        std::ofstream out = open_output(path);
        out << "metric,value\n";
        out << "accuracy," << fmt_double(outcome.metrics.accuracy, 9) << "\n";
        out << "fp_rate," << fmt_double(outcome.metrics.fp_rate, 9) << "\n";
        out << "fn_rate," << fmt_double(outcome.metrics.fn_rate, 9) << "\n";
        out << "deviation," << fmt_double(outcome.metrics.deviation, 9) << "\n";
        out << "variance," << fmt_double(outcome.metrics.variance, 9) << "\n";
        finish_output(out, path);
        manifest.add_output("metrics", path);
    }
    {
        const std::string path = in_dir("trials.csv");
        std::ofstream out = open_output(path);
        out << "trial,seed,train_size,test_size,correct,accuracy,false_positives,"
               "false_negatives,fp_rate,fn_rate,dissimilar_bins\n";
        for (std::size_t t = 0; t < outcome.trials.size(); ++t) {
            const TrialResult& trial = outcome.trials[t];
            out << t << ',' << trial.seed << ',' << trial.train_size << ',' << trial.test_size
                << ',' << trial.correct << ',' << fmt_double(trial.accuracy(), 9) << ','
                << trial.false_positives << ',' << trial.false_negatives << ','
                << fmt_double(trial.fp_rate(), 9) << ',' << fmt_double(trial.fn_rate(), 9) << ',';
            for (std::size_t i = 0; i < trial.dissimilar_bins.size(); ++i) {
                if (i > 0) out << '|';
                out << trial.dissimilar_bins[i];
            }
            out << "\n";
        }
        finish_output(out, path);
        manifest.add_output("trials", path);
    }

    // Deployable model fitted on the full task data (trials use splits).
    if (args.classifier == "knn") {
        const std::string path = in_dir("model.txt");
        std::ofstream out = open_output(path);
        KnnModel::fit(points, args.k).save(out);
        finish_output(out, path);
        manifest.add_output("model", path);
    } else if (args.classifier == "rf") {
        const std::string path = in_dir("model.txt");
        std::ofstream out = open_output(path);
        ForestParams forest;
        forest.tree_count = args.trees;
        forest.max_depth = args.depth;
        forest.seed = args.seed;
        ForestModel::fit(points, forest).save(out);
        finish_output(out, path);
        manifest.add_output("model", path);
    }

    {
        const std::string path = in_dir("report.txt");
        std::ofstream out = open_output(path);
        out << "task: " << args.task << "  classifier: " << args.classifier
            << "  trials: " << args.trials << "  seed: " << args.seed << "\n\n";
        if (args.task == "level") {
            out << "       Acc       Dev       Var\n";
            out << "  " << fmt_double(outcome.metrics.accuracy, 6) << "  "
                << fmt_double(outcome.metrics.deviation, 6) << "  "
                << fmt_double(outcome.metrics.variance, 6) << "\n";
        } else {
            out << "       Acc        FP        FN       Dev       Var\n";
            out << "  " << fmt_double(outcome.metrics.accuracy, 6) << "  "
                << fmt_double(outcome.metrics.fp_rate, 6) << "  "
                << fmt_double(outcome.metrics.fn_rate, 6) << "  "
                << fmt_double(outcome.metrics.deviation, 6) << "  "
                << fmt_double(outcome.metrics.variance, 6) << "\n";
        }
        std::size_t flagged_trials = 0;
        for (const TrialResult& trial : outcome.trials) {
            if (!trial.dissimilar_bins.empty()) ++flagged_trials;
        }
        out << "\nsimilarity: " << flagged_trials << " of " << outcome.trials.size()
            << " trials had train/test bins differing by >= "
            << fmt_double(params.similarity_threshold * 100.0, 1) << " pp\n";
        finish_output(out, path);
        manifest.add_output("report", path);
    }

    manifest.write_file(in_dir("manifest.txt"));
    std::cout << "task " << args.task << " / " << args.classifier
              << ": accuracy " << fmt_double(outcome.metrics.accuracy, 6) << ", fp "
              << fmt_double(outcome.metrics.fp_rate, 6) << ", fn "
              << fmt_double(outcome.metrics.fn_rate, 6) << " -> " << args.out_dir << "\n";
    return 0;
}

// ------------------------------------------------------------------- sweep

struct SweepArgs {
    std::vector<std::string> inputs;
    std::string out;
    std::string alpha_grid = "0:0.08:0.005";
    std::string binning = "coarse";
    std::string manifest_path;
};

int run_sweep(const SweepArgs& args) {
    const auto parts = split_on(args.alpha_grid, ':');
    if (parts.size() != 3) {
        throw ConfigError("--alpha must be lo:hi:step, got '" + args.alpha_grid + "'");
    }
    const double lo = parse_double(parts[0], "alpha lo");
    const double hi = parse_double(parts[1], "alpha hi");
    const double step = parse_double(parts[2], "alpha step");
    if (step <= 0.0 || hi < lo) throw ConfigError("alpha grid must have step > 0 and hi >= lo");

    const Binning binning = binning_from_string(args.binning);
    const std::vector<Transaction> all = read_merged(args.inputs);
    std::vector<std::int64_t> benign_rtts;
    for (const Transaction& tx : all) {
        if (tx.label == Label::Benign) benign_rtts.push_back(tx.rtt_us);
    }
    const Histogram hist = build_histogram(benign_rtts, binning);

    Manifest manifest;
    manifest.set("command", "sweep");
    manifest.set("format", kFormatVersion);
    for (std::size_t i = 0; i < args.inputs.size(); ++i) {
        manifest.add_input("transactions" + std::to_string(i), args.inputs[i]);
    }
    manifest.set("alpha_grid", args.alpha_grid);
    manifest.set("binning", args.binning);

    std::ofstream out = open_output(args.out);
    out << "alpha,retained_bins,success_rate\n";
    for (int k = 0;; ++k) {
        const double alpha = lo + static_cast<double>(k) * step;
        if (alpha > hi + step * 1e-9) break;
        const AlphaMask mask = build_alpha_mask(hist, alpha);
        std::int64_t retained = 0;
        for (const std::uint8_t bit : mask.bits) retained += bit;
        out << fmt_double(alpha, 6) << ',' << retained << ','
            << fmt_double(attack_success_rate(mask), 6) << "\n";
    }
    finish_output(out, args.out);
    manifest.add_output("sweep", args.out);

    const std::string manifest_path =
        args.manifest_path.empty() ? default_manifest_path(args.out) : args.manifest_path;
    manifest.write_file(manifest_path);
    std::cout << "alpha sweep over " << benign_rtts.size() << " benign transactions -> "
              << args.out << "\n";
    return 0;
}

// ------------------------------------------------------------------ report

struct ReportArgs {
    std::vector<std::string> inputs;
    std::string attack_in;
    std::string metrics_path;
    std::string out_dir;
};

std::string sanitize(const std::string& name) {
    std::string out = name;
    for (char& c : out) {
        if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
    }
    return out;
}

int run_report(const ReportArgs& args) {
    const std::vector<Transaction> benign_in = read_merged(args.inputs);
    std::vector<Transaction> attack;
    if (!args.attack_in.empty()) {
        require_input_file(args.attack_in);
        attack = read_transactions_file(args.attack_in);
    }
    std::string metrics_text;
    if (!args.metrics_path.empty()) {
        require_input_file(args.metrics_path);
        std::ifstream in(args.metrics_path);
        std::ostringstream buffer;
        buffer << in.rdbuf();
        metrics_text = buffer.str();
    }

    std::vector<Transaction> cache_txs;
    std::vector<Transaction> resolve_txs;
    for (const Transaction& tx : benign_in) {
        if (tx.label == Label::Attack) {
            attack.push_back(tx);
        } else if (tx.level == DnsLevel::Cache) {
            cache_txs.push_back(tx);
        } else {
            resolve_txs.push_back(tx);
        }
    }

    std::filesystem::create_directories(args.out_dir);
    const auto in_dir = [&](const std::string& name) {
        return (std::filesystem::path(args.out_dir) / name).string();
    };

    Manifest manifest;
    manifest.set("command", "report");
    manifest.set("format", kFormatVersion);
    for (std::size_t i = 0; i < args.inputs.size(); ++i) {
        manifest.add_input("transactions" + std::to_string(i), args.inputs[i]);
    }
    if (!args.attack_in.empty()) manifest.add_input("attack_transactions", args.attack_in);
    if (!args.metrics_path.empty()) manifest.add_input("metrics", args.metrics_path);

    // Whole-trace cache/resolve view: 1 ms bins over 0-100 ms.
    const Binning overview{0, 100'000, 1'000};
    write_histogram_file(in_dir("cache_hist.csv"), build_histogram(cache_txs, overview), manifest,
                         "cache_hist");
    write_histogram_file(in_dir("resolve_hist.csv"), build_histogram(resolve_txs, overview),
                         manifest, "resolve_hist");

    // Per-domain view: 10 ms bins over 0-400 ms.
    const Binning per_domain{0, 400'000, 10'000};
    std::set<std::string> domains;
    for (const Transaction& tx : benign_in) domains.insert(tx.domain);
    for (const std::string& domain : domains) {
        std::vector<Transaction> rows;
        for (const Transaction& tx : benign_in) {
            if (tx.domain == domain) rows.push_back(tx);
        }
        const std::string name = "domain_" + sanitize(domain) + ".csv";
        write_histogram_file(in_dir(name), build_histogram(rows, per_domain), manifest,
                             "domain_" + sanitize(domain));
    }

    // Attack/cache overlap view: 0.5 ms bins over 0-20 ms.
    write_histogram_file(in_dir("cache_fine.csv"), build_histogram(cache_txs, Binning::fine()),
                         manifest, "cache_fine");
    write_histogram_file(in_dir("attack_fine.csv"), build_histogram(attack, Binning::fine()),
                         manifest, "attack_fine");

    if (!args.metrics_path.empty()) {
        const std::string path = in_dir("metrics.csv");
        std::ofstream out = open_output(path);
        out << metrics_text;
        finish_output(out, path);
        manifest.add_output("metrics", path);
    }

    {
        const std::string path = in_dir("summary.txt");
        std::ofstream out = open_output(path);
        out << "transactions: " << benign_in.size() << " benign, " << attack.size()
            << " attack\n";
        out << "cache answers: " << cache_txs.size() << "  resolve answers: "
            << resolve_txs.size() << "\n";
        out << "domains: " << domains.size() << "\n";
        if (!metrics_text.empty()) {
            std::map<std::string, std::string> metric;
            std::istringstream lines(metrics_text);
            std::string line;
            while (std::getline(lines, line)) {
                const auto fields = split_on(line, ',');
                if (fields.size() == 2 && fields[0] != "metric") metric[fields[0]] = fields[1];
            }
            out << "\n       Acc        FP        FN       Dev       Var\n";
            const auto cell = [&](const char* key) {
                const auto it = metric.find(key);
                return it == metric.end() ? std::string("       n/a") : "  " + it->second;
            };
            out << cell("accuracy") << cell("fp_rate") << cell("fn_rate") << cell("deviation")
                << cell("variance") << "\n";
        }
        finish_output(out, path);
        manifest.add_output("summary", path);
    }

    manifest.write_file(in_dir("manifest.txt"));
    std::cout << "report over " << benign_in.size() << " benign / " << attack.size()
              << " attack transactions -> " << args.out_dir << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"DNS response-timing analysis toolkit"};
    app.require_subcommand(1);

    SimulateArgs sim;
    bool sim_ci = false;
    CLI::App* simulate = app.add_subcommand("simulate", "Generate benign/attack transactions");
    simulate->add_option("--profile", sim.profile,
                         "Built-in profile: local, cloud, iucc, sep");
    simulate->add_option("--model", sim.model_path, "Level model key-value file");
    simulate->add_option("--workload", sim.workload_path, "Workload key-value file");
    simulate->add_option("--queries", sim.queries, "Override the workload's total query count");
    simulate->add_option("--ttl-mode", sim.ttl_mode, "Override TTL mode: long, zero, mixed")
        ->check(CLI::IsMember({"long", "zero", "mixed"}));
    simulate->add_option("--out", sim.out, "Output transactions CSV")->required();
    simulate->add_option("--attack-out", sim.attack_out, "Also write spoofed transactions here");
    simulate->add_option("--attack-min-ms", sim.attack_min_ms, "Override attack window start");
    simulate->add_option("--attack-max-ms", sim.attack_max_ms, "Override attack window end");
    simulate->add_option("--emit-logs", sim.emit_logs_prefix,
                         "Also write <prefix>_client/_resolver/_registry.csv packet logs");
    simulate->add_option("--manifest", sim.manifest_path, "Manifest path (default <out>.manifest)");
    simulate->add_option("--seed", sim.seed, "Random seed (default 0)");
    simulate->add_flag("--ci", sim_ci, "Require an explicit --seed");

    IngestArgs ing;
    CLI::App* ingest = app.add_subcommand("ingest", "Correlate packet logs into transactions");
    ingest->add_option("--client", ing.client_path, "Client-side log CSV")->required();
    ingest->add_option("--resolver", ing.resolver_path, "Resolver-side log CSV")->required();
    ingest->add_option("--registry", ing.registry_path, "Server registry CSV")->required();
    ingest->add_option("--out", ing.out, "Output transactions CSV")->required();
    ingest->add_option("--accumulated-out", ing.accumulated_out,
                       "Also write per-level accumulated RTTs here");
    ingest->add_option("--manifest", ing.manifest_path, "Manifest path (default <out>.manifest)");

    AnalyzeArgs ana;
    CLI::App* analyze = app.add_subcommand("analyze", "Histograms, cache split, domain tables");
    analyze->add_option("--in", ana.inputs, "Transactions CSV (repeatable, merged)")->required();
    analyze->add_option("--out-dir", ana.out_dir, "Output directory")->required();
    analyze->add_option("--ping-ms", ana.ping_ms, "Client<->resolver ping mean (default 2.0)");
    analyze->add_option("--domain", ana.domain, "Domain for the interval table");
    analyze->add_option("--interval", ana.interval, "RTT window lo:hi in milliseconds");
    analyze->add_option("--coarse", ana.coarse, "Coarse binning (default 'coarse')");
    analyze->add_option("--fine", ana.fine, "Fine binning (default 'fine')");

    DetectArgs det;
    bool det_ci = false;
    CLI::App* detect = app.add_subcommand("detect", "Evaluate classifiers over the RTT feature");
    detect->add_option("--in", det.inputs, "Transactions CSV (repeatable, merged)")->required();
    detect->add_option("--out-dir", det.out_dir, "Output directory")->required();
    detect->add_option("--task", det.task, "attack, cache, or level (default attack)")
        ->check(CLI::IsMember({"attack", "cache", "level"}));
    detect->add_option("--classifier", det.classifier,
                       "knn, rf, mask, or naive (default rf)")
        ->check(CLI::IsMember({"knn", "rf", "mask", "naive"}));
    detect->add_option("--benign-scope", det.benign_scope,
                       "Benign rows used for the attack task: cache or all (default cache)")
        ->check(CLI::IsMember({"cache", "all"}));
    detect->add_option("--binning", det.binning,
                       "Mask/similarity binning (default: fine for attack, coarse otherwise)");
    detect->add_option("--trials", det.trials, "Evaluation trials (default 10)");
    detect->add_option("--train-fraction", det.train_fraction, "Train share (default 0.8)");
    detect->add_option("--k", det.k, "KNN neighbor count (default 5)");
    detect->add_option("--trees", det.trees, "Forest size (default 50)");
    detect->add_option("--depth", det.depth, "Tree depth limit (default 8)");
    detect->add_option("--alpha", det.alpha, "Mask retention threshold (default 0.005)");
    detect->add_option("--seed", det.seed, "Random seed (default 0)");
    detect->add_flag("--ci", det_ci, "Require an explicit --seed");

    SweepArgs swp;
    CLI::App* sweep = app.add_subcommand("sweep", "Alpha sweep of mask attack success rate");
    sweep->add_option("--in", swp.inputs, "Transactions CSV (repeatable, merged)")->required();
    sweep->add_option("--out", swp.out, "Output sweep CSV")->required();
    sweep->add_option("--alpha", swp.alpha_grid, "Grid lo:hi:step (default 0:0.08:0.005)");
    sweep->add_option("--binning", swp.binning, "Histogram binning (default 'coarse')");
    sweep->add_option("--manifest", swp.manifest_path, "Manifest path (default <out>.manifest)");

    ReportArgs rep;
    CLI::App* report = app.add_subcommand("report", "Plot-ready histograms and a text summary");
    report->add_option("--in", rep.inputs, "Transactions CSV (repeatable, merged)")->required();
    report->add_option("--attack-in", rep.attack_in, "Spoofed transactions CSV");
    report->add_option("--metrics", rep.metrics_path, "metrics.csv from a detect run");
    report->add_option("--out-dir", rep.out_dir, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1; // keep 0 for --help/--version, 1 for usage errors
    }

    try {
        if (simulate->parsed()) {
            if (sim_ci && simulate->count("--seed") == 0) {
                std::cerr << "error: --ci requires an explicit --seed\n";
                return 1;
            }
            return run_simulate(sim);
        }
        if (ingest->parsed()) return run_ingest(ing);
        if (analyze->parsed()) return run_analyze(ana);
        if (detect->parsed()) {
            if (det_ci && detect->count("--seed") == 0) {
                std::cerr << "error: --ci requires an explicit --seed\n";
                return 1;
            }
            return run_detect(det);
        }
        if (sweep->parsed()) return run_sweep(swp);
        if (report->parsed()) return run_report(rep);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
