#include "dnstime/random_forest.hpp"

#include "dnstime/error.hpp"
#include "dnstime/rng.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

namespace dnstime {

namespace {

double gini(const std::map<int, std::size_t>& counts, std::size_t total) {
    if (total == 0) return 0.0;
    double sum_sq = 0.0;
    for (const auto& [label, count] : counts) {
        const double p = static_cast<double>(count) / static_cast<double>(total);
        sum_sq += p * p;
    }
    return 1.0 - sum_sq;
}

int majority_label(std::span<const TrainPoint> points) {
    std::map<int, std::size_t> counts;
    for (const TrainPoint& p : points) counts[p.label]++;
    int best_label = points.front().label;
    std::size_t best_count = 0;
    for (const auto& [label, count] : counts) {
        if (count > best_count) { // map order makes ties go to the smallest id
            best_count = count;
            best_label = label;
        }
    }
    return best_label;
}

} // namespace

std::optional<SplitChoice> best_gini_threshold(std::span<const TrainPoint> points) {
    if (points.size() < 2) return std::nullopt;

    std::vector<TrainPoint> sorted(points.begin(), points.end());
    std::sort(sorted.begin(), sorted.end(),
              [](const TrainPoint& a, const TrainPoint& b) { return a.value < b.value; });

    std::map<int, std::size_t> right_counts;
    for (const TrainPoint& p : sorted) right_counts[p.label]++;
    if (right_counts.size() < 2) return std::nullopt; // pure node
    std::map<int, std::size_t> left_counts;

    const std::size_t n = sorted.size();
    std::optional<SplitChoice> best;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        left_counts[sorted[i].label]++;
        auto right_it = right_counts.find(sorted[i].label);
        if (--right_it->second == 0) right_counts.erase(right_it);
        if (sorted[i].value == sorted[i + 1].value) continue; // not a boundary
        const std::size_t left_n = i + 1;
        const std::size_t right_n = n - left_n;
        const double weighted =
            (static_cast<double>(left_n) * gini(left_counts, left_n) +
             static_cast<double>(right_n) * gini(right_counts, right_n)) /
            static_cast<double>(n);
        // Strict improvement on a first-to-last scan keeps the smallest
        // threshold on ties.
        if (!best || weighted < best->weighted_gini) {
            best = SplitChoice{
                .threshold = (static_cast<double>(sorted[i].value) +
                              static_cast<double>(sorted[i + 1].value)) /
                             2.0,
                .weighted_gini = weighted,
            };
        }
    }
    return best;
}

DecisionTree DecisionTree::train(std::span<const TrainPoint> points, int max_depth) {
    if (points.empty()) throw ConfigError("decision tree: training data is empty");
    if (max_depth < 0) throw ConfigError("decision tree: max_depth must be >= 0");
    DecisionTree tree;
    // Sort once; build() partitions the one sorted array in place, so each
    // node's slice stays sorted and splits cost O(slice) instead of a re-sort.
    std::vector<TrainPoint> sorted(points.begin(), points.end());
    std::sort(sorted.begin(), sorted.end(),
              [](const TrainPoint& a, const TrainPoint& b) { return a.value < b.value; });
    tree.build(sorted, 0, sorted.size(), 0, max_depth);
    return tree;
}

int DecisionTree::build(std::vector<TrainPoint>& points, std::size_t lo, std::size_t hi,
                        int depth, int max_depth) {
    const int index = static_cast<int>(nodes_.size());
    nodes_.emplace_back();

    const std::span<const TrainPoint> slice(points.data() + lo, hi - lo);
    if (depth < max_depth) {
        if (auto split = best_gini_threshold(slice)) {
            const auto mid_it = std::partition_point(
                points.begin() + static_cast<std::ptrdiff_t>(lo),
                points.begin() + static_cast<std::ptrdiff_t>(hi),
                [&](const TrainPoint& p) {
                    return static_cast<double>(p.value) < split->threshold;
                });
            const std::size_t mid = static_cast<std::size_t>(mid_it - points.begin());
            // Children may reallocate nodes_, so write through the index.
            const int left = build(points, lo, mid, depth + 1, max_depth);
            const int right = build(points, mid, hi, depth + 1, max_depth);
            nodes_[static_cast<std::size_t>(index)].threshold = split->threshold;
            nodes_[static_cast<std::size_t>(index)].left = left;
            nodes_[static_cast<std::size_t>(index)].right = right;
            return index;
        }
    }
    nodes_[static_cast<std::size_t>(index)].label = majority_label(slice);
    return index;
}

int DecisionTree::predict(std::int64_t value) const {
    std::size_t at = 0;
    while (nodes_[at].left >= 0) {
        at = static_cast<double>(value) < nodes_[at].threshold
                 ? static_cast<std::size_t>(nodes_[at].left)
                 : static_cast<std::size_t>(nodes_[at].right);
    }
    return nodes_[at].label;
}

void DecisionTree::save(std::ostream& out) const {
    out << "nodes = " << nodes_.size() << "\n";
    out.precision(17);
    for (const Node& n : nodes_) {
        out << n.threshold << " " << n.left << " " << n.right << " " << n.label << "\n";
    }
}

DecisionTree DecisionTree::load(std::istream& in, std::size_t& line_no) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("unexpected end of model file", line_no);
    ++line_no;
    const std::string prefix = "nodes = ";
    if (line.compare(0, prefix.size(), prefix) != 0) {
        throw ParseError("expected 'nodes = ...'", line_no - 1);
    }
    const std::size_t count = static_cast<std::size_t>(std::stoull(line.substr(prefix.size())));
    DecisionTree tree;
    tree.nodes_.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        if (!std::getline(in, line)) throw ParseError("truncated node list", line_no);
        ++line_no;
        std::istringstream row(line);
        Node n;
        if (!(row >> n.threshold >> n.left >> n.right >> n.label)) {
            throw ParseError("malformed node row", line_no - 1);
        }
        tree.nodes_.push_back(n);
    }
    if (tree.nodes_.empty()) throw ParseError("tree has no nodes", line_no - 1);
    return tree;
}

ForestModel ForestModel::fit(std::span<const TrainPoint> points, const ForestParams& params) {
    if (points.empty()) throw ConfigError("random forest: training data is empty");
    if (params.tree_count < 1) throw ConfigError("random forest: tree_count must be >= 1");
    if (params.max_depth < 1) throw ConfigError("random forest: max_depth must be >= 1");
    if (params.features_per_split != 1) {
        throw ConfigError("random forest: features_per_split must be 1 for single-feature data");
    }

    ForestModel model;
    model.params_ = params;
    model.trees_.reserve(static_cast<std::size_t>(params.tree_count));
    const std::size_t n = points.size();
    std::vector<TrainPoint> sample(n);
    for (int t = 0; t < params.tree_count; ++t) {
        Rng rng(derive_seed(params.seed, static_cast<std::uint64_t>(t)));
        for (std::size_t i = 0; i < n; ++i) {
            sample[i] = points[rng.next_below(n)];
        }
        model.trees_.push_back(DecisionTree::train(sample, params.max_depth));
    }
    return model;
}

int ForestModel::predict(std::int64_t rtt_us) const {
    std::map<int, std::size_t> votes;
    for (const DecisionTree& tree : trees_) votes[tree.predict(rtt_us)]++;
    int best_label = 0;
    std::size_t best_votes = 0;
    bool first = true;
    for (const auto& [label, count] : votes) {
        if (first || count > best_votes) { // map order makes ties go to the smallest id
            best_votes = count;
            best_label = label;
            first = false;
        }
    }
    return best_label;
}

void ForestModel::save(std::ostream& out) const {
    out << "dnstime-model v1\n";
    out << "type = random_forest\n";
    out << "trees = " << trees_.size() << "\n";
    out << "max_depth = " << params_.max_depth << "\n";
    out << "features_per_split = " << params_.features_per_split << "\n";
    out << "seed = " << params_.seed << "\n";
    for (const DecisionTree& tree : trees_) tree.save(out);
}

ForestModel ForestModel::load(std::istream& in) {
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line) || line != "dnstime-model v1") {
        throw ParseError("expected 'dnstime-model v1' header", line_no);
    }
    ++line_no;
    auto read_kv = [&](const std::string& key) {
        std::string l;
        if (!std::getline(in, l)) throw ParseError("unexpected end of model file", line_no);
        const std::string prefix = key + " = ";
        if (l.compare(0, prefix.size(), prefix) != 0) {
            throw ParseError("expected '" + key + " = ...'", line_no);
        }
        ++line_no;
        return l.substr(prefix.size());
    };
    if (read_kv("type") != "random_forest") throw ParseError("model type is not random_forest", 2);
    const std::size_t tree_count = static_cast<std::size_t>(std::stoull(read_kv("trees")));
    ForestModel model;
    model.params_.tree_count = static_cast<int>(tree_count);
    model.params_.max_depth = std::stoi(read_kv("max_depth"));
    model.params_.features_per_split = std::stoi(read_kv("features_per_split"));
    model.params_.seed = std::stoull(read_kv("seed"));
    model.trees_.reserve(tree_count);
    for (std::size_t t = 0; t < tree_count; ++t) {
        model.trees_.push_back(DecisionTree::load(in, line_no));
    }
    return model;
}

ForestModel rf_fit(std::span<const TrainPoint> points, const ForestParams& params) {
    return ForestModel::fit(points, params);
}

int rf_predict(const ForestModel& model, std::int64_t rtt_us) { return model.predict(rtt_us); }

} // namespace dnstime
