#include "dnstime/error.hpp"
#include "dnstime/random_forest.hpp"
#include "dnstime/rng.hpp"

#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

using namespace dnstime;

namespace {

double gini(const std::map<int, int>& counts, int total) {
    if (total == 0) return 0.0;
    double impurity = 1.0;
    for (const auto& [label, count] : counts) {
        const double p = static_cast<double>(count) / static_cast<double>(total);
        impurity -= p * p;
    }
    return impurity;
}

// Exhaustive reference: try every midpoint of consecutive distinct sorted
// values, compute the weighted Gini of the two sides directly, keep the
// smallest threshold among minimizers.
std::optional<SplitChoice> exhaustive_best_split(std::vector<TrainPoint> points) {
    std::sort(points.begin(), points.end(),
              [](const TrainPoint& a, const TrainPoint& b) { return a.value < b.value; });
    std::optional<SplitChoice> best;
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (points[i].value == points[i - 1].value) continue;
        const double threshold =
            (static_cast<double>(points[i - 1].value) + static_cast<double>(points[i].value)) / 2.0;
        std::map<int, int> left, right;
        int nl = 0, nr = 0;
        for (const TrainPoint& p : points) {
            if (static_cast<double>(p.value) < threshold) {
                left[p.label]++;
                ++nl;
            } else {
                right[p.label]++;
                ++nr;
            }
        }
        const double total = static_cast<double>(nl + nr);
        const double weighted =
            (nl / total) * gini(left, nl) + (nr / total) * gini(right, nr);
        if (!best || weighted < best->weighted_gini - 1e-12) {
            best = SplitChoice{threshold, weighted};
        }
    }
    return best;
}

bool is_pure(const std::vector<TrainPoint>& points) {
    for (const TrainPoint& p : points) {
        if (p.label != points.front().label) return false;
    }
    return true;
}

} // namespace

TEST_CASE("best_gini_threshold matches the exhaustive reference") {
    Rng rng(555);
    for (int instance = 0; instance < 200; ++instance) {
        const int n = 2 + static_cast<int>(rng.next_below(40));
        std::vector<TrainPoint> points;
        for (int i = 0; i < n; ++i) {
            points.push_back({rng.uniform_int(0, 20), static_cast<int>(rng.next_below(3))});
        }
        const auto got = best_gini_threshold(points);
        const auto want = exhaustive_best_split(points);

        std::vector<std::int64_t> values;
        for (const TrainPoint& p : points) values.push_back(p.value);
        const bool all_equal = std::adjacent_find(values.begin(), values.end(),
                                                  std::not_equal_to<>()) == values.end();
        if (is_pure(points) || all_equal) {
            CHECK_FALSE(got.has_value());
            continue;
        }
        REQUIRE(want.has_value());
        REQUIRE(got.has_value());
        CAPTURE(instance);
        CHECK(got->threshold == doctest::Approx(want->threshold).epsilon(1e-12));
        CHECK(got->weighted_gini == doctest::Approx(want->weighted_gini).epsilon(1e-9));
    }
}

TEST_CASE("threshold ties resolve to the smallest threshold") {
    // Both midpoints 15 and 35 separate one minority point; Gini is equal.
    const std::vector<TrainPoint> points{{10, 0}, {20, 1}, {30, 1}, {40, 0}};
    const auto got = best_gini_threshold(points);
    REQUIRE(got.has_value());
    CHECK(got->threshold == doctest::Approx(15.0));
}

TEST_CASE("pure or constant nodes have no split") {
    CHECK_FALSE(best_gini_threshold(std::vector<TrainPoint>{{1, 0}, {2, 0}}).has_value());
    CHECK_FALSE(best_gini_threshold(std::vector<TrainPoint>{{5, 0}, {5, 1}}).has_value());
    CHECK_FALSE(best_gini_threshold(std::vector<TrainPoint>{{5, 0}}).has_value());
}

TEST_CASE("a single tree separates linearly separable data perfectly") {
    std::vector<TrainPoint> points;
    for (int i = 0; i < 50; ++i) points.push_back({i, 0});
    for (int i = 100; i < 150; ++i) points.push_back({i, 1});
    const DecisionTree tree = DecisionTree::train(points, 1);
    for (const TrainPoint& p : points) CHECK(tree.predict(p.value) == p.label);

    SUBCASE("depth 0 is a bare majority leaf") {
        const DecisionTree leaf = DecisionTree::train(points, 0);
        CHECK(leaf.node_count() == 1);
    }
    SUBCASE("a pure node stays a single leaf at any depth") {
        std::vector<TrainPoint> pure;
        for (int i = 0; i < 10; ++i) pure.push_back({i, 4});
        const DecisionTree t = DecisionTree::train(pure, 8);
        CHECK(t.node_count() == 1);
        CHECK(t.predict(1000) == 4);
    }
}

TEST_CASE("forest fit validates parameters") {
    const std::vector<TrainPoint> points{{1, 0}, {10, 1}, {2, 0}, {11, 1}};
    CHECK_THROWS_AS(ForestModel::fit({}, {}), ConfigError);
    ForestParams bad;
    bad.tree_count = 0;
    CHECK_THROWS_AS(ForestModel::fit(points, bad), ConfigError);
    bad = {};
    bad.max_depth = 0;
    CHECK_THROWS_AS(ForestModel::fit(points, bad), ConfigError);
    bad = {};
    bad.features_per_split = 2;
    CHECK_THROWS_AS(ForestModel::fit(points, bad), ConfigError);
}

TEST_CASE("forests are deterministic in the seed") {
    Rng rng(31);
    std::vector<TrainPoint> points;
    for (int i = 0; i < 200; ++i) {
        const int label = static_cast<int>(rng.next_below(2));
        points.push_back({rng.uniform_int(0, 100) + label * 80, label});
    }
    ForestParams params;
    params.tree_count = 11;
    params.max_depth = 4;
    params.seed = 99;
    const ForestModel a = ForestModel::fit(points, params);
    const ForestModel b = ForestModel::fit(points, params);
    params.seed = 100;
    const ForestModel c = ForestModel::fit(points, params);
    CHECK(a.tree_count() == 11);
    bool diverged = false;
    for (std::int64_t q = -20; q <= 220; ++q) {
        CHECK(a.predict(q) == b.predict(q));
        if (a.predict(q) != c.predict(q)) diverged = true;
    }
    // Different seeds bootstrap differently; on overlapping data the decision
    // boundary should move somewhere on the grid.
    CHECK(diverged);
}

TEST_CASE("forest separates disjoint classes and votes out single-tree noise") {
    std::vector<TrainPoint> points;
    Rng rng(8);
    for (int i = 0; i < 300; ++i) {
        points.push_back({rng.uniform_int(0, 1000), 0});
        points.push_back({rng.uniform_int(5000, 6000), 1});
    }
    ForestParams params;
    params.tree_count = 15;
    params.max_depth = 3;
    params.seed = 7;
    const ForestModel model = ForestModel::fit(points, params);
    int correct = 0;
    for (const TrainPoint& p : points) {
        if (model.predict(p.value) == p.label) ++correct;
    }
    CHECK(correct == static_cast<int>(points.size()));

    SUBCASE("single-class data predicts that class everywhere") {
        std::vector<TrainPoint> one;
        for (int i = 0; i < 20; ++i) one.push_back({i * 3, 6});
        const ForestModel constant = ForestModel::fit(one, params);
        CHECK(constant.predict(-100) == 6);
        CHECK(constant.predict(100000) == 6);
    }
}

TEST_CASE("save/load round-trips predictions") {
    Rng rng(12);
    std::vector<TrainPoint> points;
    for (int i = 0; i < 150; ++i) {
        const int label = static_cast<int>(rng.next_below(3));
        points.push_back({rng.uniform_int(0, 300) + label * 250, label});
    }
    ForestParams params;
    params.tree_count = 7;
    params.max_depth = 5;
    params.seed = 3;
    const ForestModel model = ForestModel::fit(points, params);
    std::stringstream stream;
    model.save(stream);
    const ForestModel loaded = ForestModel::load(stream);
    CHECK(loaded.params().tree_count == 7);
    CHECK(loaded.params().max_depth == 5);
    for (std::int64_t q = -50; q <= 1100; q += 9) CHECK(loaded.predict(q) == model.predict(q));

    SUBCASE("corrupt streams are rejected") {
        std::stringstream bad("dnstime-model v1\ntype = knn\n");
        CHECK_THROWS_AS(ForestModel::load(bad), ParseError);
    }
}

TEST_CASE("operation wrappers delegate to the model") {
    const std::vector<TrainPoint> points{{0, 0}, {1, 0}, {100, 1}, {101, 1}};
    ForestParams params;
    params.tree_count = 5;
    params.max_depth = 2;
    const ForestModel model = rf_fit(points, params);
    CHECK(rf_predict(model, 0) == model.predict(0));
}
