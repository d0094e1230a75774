#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace dnstime {

// One labeled training value. Labels are small non-negative class ids; binary
// attack tasks use 0 = attack, 1 = benign so that voting ties (only possible
// with an even k) fail safe toward attack.
struct TrainPoint {
    std::int64_t value = 0;
    int label = 0;

    bool operator==(const TrainPoint&) const = default;
};

// Exact nearest-neighbor classifier on a single integer feature. Neighbors are
// the k training points minimizing (|value - query|, original index)
// lexicographically, so distance ties resolve toward earlier training points.
// Prediction is the majority label among the neighbors; vote ties resolve to
// the smallest label id.
class KnnModel {
public:
    // ConfigError on empty training data, k < 1, or k > point count. k
    // defaults to 5 and should stay odd for binary tasks to avoid vote ties.
    static KnnModel fit(std::span<const TrainPoint> points, int k = 5);

    int predict(std::int64_t query) const;

    int k() const { return k_; }
    std::size_t size() const { return points_.size(); }

    // Versioned flat text serialization.
    void save(std::ostream& out) const;
    static KnnModel load(std::istream& in);

    bool operator==(const KnnModel&) const = default;

private:
    struct Stored {
        std::int64_t value = 0;
        int label = 0;
        int original_index = 0;

        bool operator==(const Stored&) const = default;
    };

    int k_ = 0;
    std::vector<Stored> points_; // sorted by (value, original_index)
};

// Operation-style wrappers over the class API.
KnnModel knn_fit(std::span<const TrainPoint> points, int k = 5);
int knn_predict(const KnnModel& model, std::int64_t rtt_us);

} // namespace dnstime
