#pragma once

// Repeated-holdout evaluation: each trial shuffles the data with a seed derived
// from the master seed, splits it train/test, fits the chosen classifier on the
// train side, and scores the test side. Reported rates follow the detection
// convention: a false positive is benign traffic flagged as attack, a false
// negative is an attack waved through.

#include "dnstime/histogram.hpp"
#include "dnstime/knn.hpp"
#include "dnstime/random_forest.hpp"
#include "dnstime/types.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace dnstime {

enum class ClassifierKind {
    Knn,
    RandomForest,
    MaskAlpha, // retention mask built from the benign train side at `alpha`
    MaskNaive, // per-bin majority mask between benign and attack train sides
};

struct EvalParams {
    ClassifierKind classifier = ClassifierKind::Knn;
    int trials = 10;
    double train_fraction = 0.8;
    std::uint64_t seed = 0;
    // Label counted as the detection target; enables fp/fn accounting. The
    // transaction overload fixes this to 0 (attack).
    std::optional<int> positive_label;
    int knn_k = 5;
    ForestParams forest;
    double alpha = 0.005;
    Binning binning = Binning::fine(); // masks and the similarity check
    double similarity_threshold = 0.05;
};

struct TrialResult {
    std::uint64_t seed = 0;
    std::size_t train_size = 0;
    std::size_t test_size = 0;
    std::size_t correct = 0;
    std::size_t false_positives = 0;
    std::size_t false_negatives = 0;
    std::size_t positives = 0; // actual positives in the test split
    std::size_t negatives = 0; // actual non-positives in the test split
    // Bins whose train/test share differ by at least the similarity threshold:
    // a nonempty list means the split itself is lopsided and the trial's rates
    // should be read with suspicion.
    std::vector<int> dissimilar_bins;

    double accuracy() const;
    double fp_rate() const; // false_positives / negatives, 0 when no negatives
    double fn_rate() const; // false_negatives / positives, 0 when no positives
};

struct Metrics {
    double accuracy = 0.0;
    double fp_rate = 0.0;
    double fn_rate = 0.0;
    double deviation = 0.0; // population std of per-trial accuracy
    double variance = 0.0;  // deviation squared

    bool operator==(const Metrics&) const = default;
};

struct EvaluationOutcome {
    Metrics metrics;
    std::vector<TrialResult> trials;
};

// Bin indices whose share of the two histograms differs by at least
// `threshold` (shares are count/total). ConfigError when binnings differ.
std::vector<int> similarity_flags(const Histogram& train, const Histogram& test,
                                  double threshold = 0.05);

// Generic core over labeled values. ConfigError on fewer than 2 points,
// trials < 1, a train fraction outside (0, 1), or (for mask classifiers)
// labels other than 0 = attack / 1 = benign.
EvaluationOutcome evaluate(std::span<const TrainPoint> points, const EvalParams& params);

// Attack-detection wrapper: value = rtt_us, label 0 = attack / 1 = benign,
// positive label forced to 0.
EvaluationOutcome evaluate(std::span<const Transaction> transactions, const EvalParams& params);

} // namespace dnstime
