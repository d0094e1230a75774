#include "dnstime/evaluate.hpp"

#include "dnstime/alpha_mask.hpp"
#include "dnstime/error.hpp"
#include "dnstime/rng.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace dnstime {

double TrialResult::accuracy() const {
    return test_size == 0 ? 0.0
                          : static_cast<double>(correct) / static_cast<double>(test_size);
}

double TrialResult::fp_rate() const {
    return negatives == 0 ? 0.0
                          : static_cast<double>(false_positives) / static_cast<double>(negatives);
}

double TrialResult::fn_rate() const {
    return positives == 0 ? 0.0
                          : static_cast<double>(false_negatives) / static_cast<double>(positives);
}

std::vector<int> similarity_flags(const Histogram& train, const Histogram& test,
                                  double threshold) {
    if (train.binning != test.binning) {
        throw ConfigError("similarity check: histograms use different binnings");
    }
    std::vector<int> flags;
    if (train.total == 0 || test.total == 0) return flags;
    for (std::size_t i = 0; i < train.counts.size(); ++i) {
        const double a = static_cast<double>(train.counts[i]) / static_cast<double>(train.total);
        const double b = static_cast<double>(test.counts[i]) / static_cast<double>(test.total);
        if (std::abs(a - b) >= threshold) flags.push_back(static_cast<int>(i));
    }
    return flags;
}

namespace {

std::vector<std::int64_t> values_of(std::span<const TrainPoint> points) {
    std::vector<std::int64_t> values;
    values.reserve(points.size());
    for (const TrainPoint& p : points) values.push_back(p.value);
    return values;
}

// Fits the trial's classifier and returns a predict function over rtt values.
std::function<int(std::int64_t)> fit_classifier(std::span<const TrainPoint> train,
                                                const EvalParams& params,
                                                std::uint64_t trial_seed) {
    switch (params.classifier) {
    case ClassifierKind::Knn: {
        KnnModel model = KnnModel::fit(train, params.knn_k);
        return [model = std::move(model)](std::int64_t v) { return model.predict(v); };
    }
    case ClassifierKind::RandomForest: {
        ForestParams fp = params.forest;
        fp.seed = trial_seed; // vary trees across trials, still seed-derived
        ForestModel model = ForestModel::fit(train, fp);
        return [model = std::move(model)](std::int64_t v) { return model.predict(v); };
    }
    case ClassifierKind::MaskAlpha:
    case ClassifierKind::MaskNaive: {
        std::vector<std::int64_t> benign;
        std::vector<std::int64_t> attack;
        for (const TrainPoint& p : train) {
            if (p.label == 1) {
                benign.push_back(p.value);
            } else if (p.label == 0) {
                attack.push_back(p.value);
            } else {
                throw ConfigError("mask classifiers need binary labels (0 attack, 1 benign)");
            }
        }
        const Histogram benign_hist = build_histogram(benign, params.binning);
        const AlphaMask mask =
            params.classifier == ClassifierKind::MaskAlpha
                ? build_alpha_mask(benign_hist, params.alpha)
                : naive_cache_mask(benign_hist, build_histogram(attack, params.binning));
        return [mask = std::move(mask)](std::int64_t v) {
            return classify_mask(v, mask) == Label::Benign ? 1 : 0;
        };
    }
    }
    throw ConfigError("unknown classifier kind");
}

} // namespace

EvaluationOutcome evaluate(std::span<const TrainPoint> points, const EvalParams& params) {
    if (points.size() < 2) throw ConfigError("evaluation needs at least 2 points");
    if (params.trials < 1) throw ConfigError("evaluation needs at least 1 trial");
    const bool single_class = std::all_of(
        points.begin(), points.end(),
        [&](const TrainPoint& p) { return p.label == points.front().label; });
    if (single_class) throw ConfigError("evaluation needs at least 2 distinct labels");
    if (!(params.train_fraction > 0.0 && params.train_fraction < 1.0)) {
        throw ConfigError("train fraction must lie strictly between 0 and 1");
    }

    EvaluationOutcome outcome;
    outcome.trials.reserve(static_cast<std::size_t>(params.trials));

    std::vector<TrainPoint> shuffled(points.begin(), points.end());
    const std::size_t n = shuffled.size();
    std::size_t train_n = static_cast<std::size_t>(
        std::llround(params.train_fraction * static_cast<double>(n)));
    train_n = std::clamp<std::size_t>(train_n, 1, n - 1);

    for (int t = 0; t < params.trials; ++t) {
        const std::uint64_t trial_seed = derive_seed(params.seed, static_cast<std::uint64_t>(t));
        Rng rng(trial_seed);
        std::copy(points.begin(), points.end(), shuffled.begin());
        rng.shuffle(shuffled);

        const std::span<const TrainPoint> train(shuffled.data(), train_n);
        const std::span<const TrainPoint> test(shuffled.data() + train_n, n - train_n);
        const auto predict = fit_classifier(train, params, trial_seed);

        TrialResult trial;
        trial.seed = trial_seed;
        trial.train_size = train.size();
        trial.test_size = test.size();
        for (const TrainPoint& p : test) {
            const int predicted = predict(p.value);
            if (predicted == p.label) trial.correct++;
            if (params.positive_label) {
                const bool actual_positive = p.label == *params.positive_label;
                const bool predicted_positive = predicted == *params.positive_label;
                if (actual_positive) {
                    trial.positives++;
                    if (!predicted_positive) trial.false_negatives++;
                } else {
                    trial.negatives++;
                    if (predicted_positive) trial.false_positives++;
                }
            }
        }
        trial.dissimilar_bins =
            similarity_flags(build_histogram(values_of(train), params.binning),
                             build_histogram(values_of(test), params.binning),
                             params.similarity_threshold);
        outcome.trials.push_back(std::move(trial));
    }

    const double trials = static_cast<double>(outcome.trials.size());
    double mean_acc = 0.0;
    for (const TrialResult& trial : outcome.trials) {
        mean_acc += trial.accuracy();
        outcome.metrics.fp_rate += trial.fp_rate();
        outcome.metrics.fn_rate += trial.fn_rate();
    }
    mean_acc /= trials;
    outcome.metrics.fp_rate /= trials;
    outcome.metrics.fn_rate /= trials;
    outcome.metrics.accuracy = mean_acc;
    double sq = 0.0;
    for (const TrialResult& trial : outcome.trials) {
        const double d = trial.accuracy() - mean_acc;
        sq += d * d;
    }
    outcome.metrics.variance = sq / trials; // population variance across trials
    outcome.metrics.deviation = std::sqrt(outcome.metrics.variance);
    return outcome;
}

EvaluationOutcome evaluate(std::span<const Transaction> transactions, const EvalParams& params) {
    std::vector<TrainPoint> points;
    points.reserve(transactions.size());
    for (const Transaction& tx : transactions) {
        points.push_back({tx.rtt_us, tx.label == Label::Attack ? 0 : 1});
    }
    EvalParams fixed = params;
    fixed.positive_label = 0; // attack is the detection target
    return evaluate(points, fixed);
}

} // namespace dnstime
