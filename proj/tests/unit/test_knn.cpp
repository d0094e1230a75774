#include "dnstime/error.hpp"
#include "dnstime/knn.hpp"
#include "dnstime/rng.hpp"

#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <sstream>
#include <vector>

using namespace dnstime;

namespace {

// Independent exhaustive reference: sort all points by (|value - query|,
// original index), take the first k, majority vote, ties to the smallest
// label.
int exhaustive_predict(const std::vector<TrainPoint>& points, int k, std::int64_t query) {
    struct Entry {
        std::int64_t distance;
        std::size_t index;
    };
    std::vector<Entry> order;
    order.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        order.push_back({std::llabs(points[i].value - query), i});
    }
    std::sort(order.begin(), order.end(), [](const Entry& a, const Entry& b) {
        if (a.distance != b.distance) return a.distance < b.distance;
        return a.index < b.index;
    });
    std::map<int, int> votes;
    for (int i = 0; i < k; ++i) votes[points[order[static_cast<std::size_t>(i)].index].label]++;
    int best_label = votes.begin()->first;
    int best_count = votes.begin()->second;
    for (const auto& [label, count] : votes) {
        if (count > best_count) {
            best_label = label;
            best_count = count;
        }
    }
    return best_label;
}

} // namespace

TEST_CASE("k=1 returns the label of the closest point") {
    const std::vector<TrainPoint> points{{10, 0}, {20, 1}, {30, 2}};
    const KnnModel model = KnnModel::fit(points, 1);
    CHECK(model.predict(11) == 0);
    CHECK(model.predict(19) == 1);
    CHECK(model.predict(1000) == 2);
}

TEST_CASE("k=n returns the global majority whatever the query") {
    const std::vector<TrainPoint> points{{10, 1}, {20, 1}, {30, 0}};
    const KnnModel model = KnnModel::fit(points, 3);
    for (const std::int64_t q : {-100, 0, 25, 1000}) CHECK(model.predict(q) == 1);
}

TEST_CASE("distance ties resolve toward earlier training points") {
    // Both points sit at distance 2 from the query; index 0 wins.
    const std::vector<TrainPoint> points{{10, 0}, {14, 1}};
    CHECK(KnnModel::fit(points, 1).predict(12) == 0);
    // Same values, labels swapped by order.
    const std::vector<TrainPoint> swapped{{14, 1}, {10, 0}};
    CHECK(KnnModel::fit(swapped, 1).predict(12) == 1);
}

TEST_CASE("vote ties resolve to the smallest label id") {
    const std::vector<TrainPoint> points{{10, 1}, {20, 0}};
    const KnnModel model = KnnModel::fit(points, 2);
    CHECK(model.predict(15) == 0);
}

TEST_CASE("random instances match the exhaustive reference exactly") {
    Rng rng(1234);
    for (int instance = 0; instance < 200; ++instance) {
        const int n = 1 + static_cast<int>(rng.next_below(100));
        std::vector<TrainPoint> points;
        points.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            points.push_back({rng.uniform_int(0, 50), static_cast<int>(rng.next_below(3))});
        }
        const int k = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
        const KnnModel model = KnnModel::fit(points, k);
        for (int q = 0; q < 8; ++q) {
            const std::int64_t query = rng.uniform_int(-10, 60);
            const int expect = exhaustive_predict(points, k, query);
            const int got = model.predict(query);
            if (got != expect) {
                CAPTURE(instance);
                CAPTURE(k);
                CAPTURE(query);
                FAIL_CHECK("mismatch: got ", got, " want ", expect);
            }
        }
    }
}

TEST_CASE("predictions are invariant under positive affine feature maps") {
    Rng rng(77);
    std::vector<TrainPoint> points;
    for (int i = 0; i < 40; ++i) {
        points.push_back({rng.uniform_int(0, 1000), static_cast<int>(rng.next_below(2))});
    }
    std::vector<TrainPoint> scaled = points;
    for (TrainPoint& p : scaled) p.value = 3 * p.value + 17;
    const KnnModel base = KnnModel::fit(points, 5);
    const KnnModel affine = KnnModel::fit(scaled, 5);
    for (int q = 0; q <= 1000; q += 13) {
        CHECK(base.predict(q) == affine.predict(3 * q + 17));
    }
}

TEST_CASE("fit validates its inputs") {
    const std::vector<TrainPoint> points{{1, 0}, {2, 1}};
    CHECK_THROWS_AS(KnnModel::fit({}, 1), ConfigError);
    CHECK_THROWS_AS(KnnModel::fit(points, 0), ConfigError);
    CHECK_THROWS_AS(KnnModel::fit(points, 3), ConfigError);
    CHECK_NOTHROW(KnnModel::fit(points, 2));
}

TEST_CASE("save/load round-trips the model and its predictions") {
    Rng rng(9);
    std::vector<TrainPoint> points;
    for (int i = 0; i < 25; ++i) {
        points.push_back({rng.uniform_int(-500, 500), static_cast<int>(rng.next_below(3))});
    }
    const KnnModel model = KnnModel::fit(points, 7);
    std::stringstream stream;
    model.save(stream);
    const KnnModel loaded = KnnModel::load(stream);
    CHECK(loaded == model);
    for (std::int64_t q = -520; q <= 520; q += 40) CHECK(loaded.predict(q) == model.predict(q));

    SUBCASE("corrupt streams are rejected") {
        std::stringstream bad("dnstime-model v1\ntype = rf\n");
        CHECK_THROWS_AS(KnnModel::load(bad), ParseError);
    }
}

TEST_CASE("operation wrappers delegate to the model") {
    const std::vector<TrainPoint> points{{100, 0}, {200, 1}, {300, 1}};
    const KnnModel model = knn_fit(points, 3);
    CHECK(knn_predict(model, 150) == model.predict(150));
    CHECK(knn_predict(model, 150) == 1);
}
