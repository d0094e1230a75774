#include "dnstime/knn.hpp"

#include "dnstime/error.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

namespace dnstime {

namespace {

std::int64_t distance(std::int64_t a, std::int64_t b) {
    return a >= b ? a - b : b - a;
}

} // namespace

KnnModel KnnModel::fit(std::span<const TrainPoint> points, int k) {
    if (points.empty()) throw ConfigError("knn: training data is empty");
    if (k < 1) throw ConfigError("knn: k must be >= 1");
    if (static_cast<std::size_t>(k) > points.size()) {
        throw ConfigError("knn: k exceeds the number of training points");
    }
    KnnModel model;
    model.k_ = k;
    model.points_.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        model.points_.push_back({points[i].value, points[i].label, static_cast<int>(i)});
    }
    std::sort(model.points_.begin(), model.points_.end(), [](const Stored& a, const Stored& b) {
        if (a.value != b.value) return a.value < b.value;
        return a.original_index < b.original_index;
    });
    return model;
}

int KnnModel::predict(std::int64_t query) const {
    const std::size_t n = points_.size();
    const std::size_t k = static_cast<std::size_t>(k_);

    // Pass 1: two pointers moving outward from the insertion point find the
    // k-th smallest distance D (by distance alone).
    auto right_it = std::lower_bound(
        points_.begin(), points_.end(), query,
        [](const Stored& p, std::int64_t value) { return p.value < value; });
    std::size_t right = static_cast<std::size_t>(right_it - points_.begin());
    std::size_t left = right; // left scans indexes [0, left), right scans [right, n)
    std::int64_t kth_distance = 0;
    for (std::size_t taken = 0; taken < k; ++taken) {
        const bool has_left = left > 0;
        const bool has_right = right < n;
        const std::int64_t dl = has_left ? distance(points_[left - 1].value, query) : 0;
        const std::int64_t dr = has_right ? distance(points_[right].value, query) : 0;
        if (has_left && (!has_right || dl <= dr)) {
            kth_distance = dl;
            --left;
        } else {
            kth_distance = dr;
            ++right;
        }
    }

    // Pass 2: gather everything within D, order by (distance, original index),
    // keep the first k. This realizes the documented tie rule even when many
    // equal values straddle the boundary.
    const auto lo = std::lower_bound(
        points_.begin(), points_.end(), query - kth_distance,
        [](const Stored& p, std::int64_t value) { return p.value < value; });
    const auto hi = std::upper_bound(
        points_.begin(), points_.end(), query + kth_distance,
        [](std::int64_t value, const Stored& p) { return value < p.value; });
    std::vector<const Stored*> candidates;
    candidates.reserve(static_cast<std::size_t>(hi - lo));
    for (auto it = lo; it != hi; ++it) candidates.push_back(&*it);
    std::sort(candidates.begin(), candidates.end(), [query](const Stored* a, const Stored* b) {
        const std::int64_t da = distance(a->value, query);
        const std::int64_t db = distance(b->value, query);
        if (da != db) return da < db;
        return a->original_index < b->original_index;
    });

    std::map<int, std::size_t> votes;
    for (std::size_t i = 0; i < k; ++i) votes[candidates[i]->label]++;
    int best_label = candidates[0]->label;
    std::size_t best_votes = 0;
    for (const auto& [label, count] : votes) {
        if (count > best_votes) { // map order makes ties go to the smallest id
            best_votes = count;
            best_label = label;
        }
    }
    return best_label;
}

void KnnModel::save(std::ostream& out) const {
    out << "dnstime-model v1\n";
    out << "type = knn\n";
    out << "k = " << k_ << "\n";
    out << "points = " << points_.size() << "\n";
    // Stored order is a pure function of the training data, so this is stable.
    for (const Stored& p : points_) {
        out << p.value << " " << p.label << " " << p.original_index << "\n";
    }
}

KnnModel KnnModel::load(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "dnstime-model v1") {
        throw ParseError("expected 'dnstime-model v1' header", 1);
    }
    auto read_kv = [&in](const std::string& key, std::size_t line_no) {
        std::string l;
        if (!std::getline(in, l)) throw ParseError("unexpected end of model file", line_no);
        const std::string prefix = key + " = ";
        if (l.compare(0, prefix.size(), prefix) != 0) {
            throw ParseError("expected '" + key + " = ...'", line_no);
        }
        return l.substr(prefix.size());
    };
    if (read_kv("type", 2) != "knn") throw ParseError("model type is not knn", 2);
    KnnModel model;
    model.k_ = std::stoi(read_kv("k", 3));
    const std::size_t count = static_cast<std::size_t>(std::stoull(read_kv("points", 4)));
    model.points_.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        if (!std::getline(in, line)) throw ParseError("truncated point list", 5 + i);
        std::istringstream row(line);
        Stored p;
        if (!(row >> p.value >> p.label >> p.original_index)) {
            throw ParseError("malformed point row", 5 + i);
        }
        model.points_.push_back(p);
    }
    if (model.k_ < 1 || static_cast<std::size_t>(model.k_) > model.points_.size()) {
        throw ParseError("model k is inconsistent with its point count", 3);
    }
    return model;
}

KnnModel knn_fit(std::span<const TrainPoint> points, int k) { return KnnModel::fit(points, k); }

int knn_predict(const KnnModel& model, std::int64_t rtt_us) { return model.predict(rtt_us); }

} // namespace dnstime
