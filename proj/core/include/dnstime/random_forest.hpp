#pragma once

// Random forest over the single RTT feature. Each tree trains on a bootstrap
// resample of the data (seeded per tree from the forest seed) and splits on
// thresholds that minimize the weighted Gini impurity. The forest predicts by
// majority vote across trees; ties resolve to the smallest label id.

#include "dnstime/knn.hpp" // TrainPoint

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace dnstime {

struct ForestParams {
    int tree_count = 50;
    int max_depth = 8;
    int features_per_split = 1; // single-feature data: kept for shape, must be 1
    std::uint64_t seed = 0;
};

// Candidate split chosen for a node: threshold and the impurity it achieves.
struct SplitChoice {
    double threshold = 0.0;
    double weighted_gini = 0.0;
};

// Finds the impurity-minimizing threshold over midpoints of consecutive
// distinct sorted values. Returns nullopt when the node is pure or all values
// are equal. Ties between thresholds resolve to the smallest threshold.
std::optional<SplitChoice> best_gini_threshold(std::span<const TrainPoint> points);

class DecisionTree {
public:
    // Trains on `points` (used as-is; bootstrapping is the forest's job).
    static DecisionTree train(std::span<const TrainPoint> points, int max_depth);

    int predict(std::int64_t value) const;

    void save(std::ostream& out) const;
    static DecisionTree load(std::istream& in, std::size_t& line_no);

    std::size_t node_count() const { return nodes_.size(); }

private:
    friend class ForestModel;

    struct Node {
        // Leaf when left < 0; then `label` is the prediction. Internal nodes
        // send value < threshold left, else right.
        double threshold = 0.0;
        int left = -1;
        int right = -1;
        int label = 0;
    };

    int build(std::vector<TrainPoint>& points, std::size_t lo, std::size_t hi, int depth,
              int max_depth);

    std::vector<Node> nodes_; // nodes_[0] is the root
};

class ForestModel {
public:
    static ForestModel fit(std::span<const TrainPoint> points, const ForestParams& params = {});

    int predict(std::int64_t rtt_us) const;

    const ForestParams& params() const { return params_; }
    std::size_t tree_count() const { return trees_.size(); }

    void save(std::ostream& out) const;
    static ForestModel load(std::istream& in);

private:
    ForestParams params_;
    std::vector<DecisionTree> trees_;
};

ForestModel rf_fit(std::span<const TrainPoint> points, const ForestParams& params = {});
int rf_predict(const ForestModel& model, std::int64_t rtt_us);

} // namespace dnstime
