#include "dnstime/alpha_mask.hpp"
#include "dnstime/error.hpp"
#include "dnstime/histogram.hpp"

#include <doctest.h>

#include <cstdint>
#include <stdexcept>
#include <vector>

using namespace dnstime;

namespace {

Histogram make_hist(const Binning& binning, std::vector<std::int64_t> counts,
                    std::int64_t extra_out_of_range = 0) {
    Histogram h;
    h.binning = binning;
    h.total = extra_out_of_range;
    for (const std::int64_t c : counts) h.total += c;
    h.counts = std::move(counts);
    return h;
}

} // namespace

TEST_CASE("mask bits follow the strict share threshold") {
    const Binning b{0, 40, 10};
    // Shares: 0.5, 0.25, 0.25, 0.0
    const Histogram h = make_hist(b, {50, 25, 25, 0});

    SUBCASE("alpha = 0 keeps every non-empty bin") {
        const AlphaMask mask = build_alpha_mask(h, 0.0);
        CHECK(mask.bits == std::vector<std::uint8_t>{1, 1, 1, 0});
    }
    SUBCASE("a share exactly equal to alpha is dropped (strictly-above rule)") {
        const AlphaMask mask = build_alpha_mask(h, 0.25);
        CHECK(mask.bits == std::vector<std::uint8_t>{1, 0, 0, 0});
    }
    SUBCASE("alpha = 1 clears everything") {
        const AlphaMask mask = build_alpha_mask(h, 1.0);
        CHECK(mask.bits == std::vector<std::uint8_t>{0, 0, 0, 0});
        CHECK(attack_success_rate(mask) == doctest::Approx(0.0));
    }
    SUBCASE("brute-force share oracle agrees bin by bin") {
        const double alpha = 0.3;
        const AlphaMask mask = build_alpha_mask(h, alpha);
        for (int bin = 0; bin < b.bin_count(); ++bin) {
            const double share = static_cast<double>(h.counts[static_cast<std::size_t>(bin)]) /
                                 static_cast<double>(h.total);
            CHECK(mask.bits[static_cast<std::size_t>(bin)] == (share > alpha ? 1 : 0));
        }
    }
}

TEST_CASE("shares divide by the full total, including out-of-range samples") {
    const Binning b{0, 20, 10};
    // 10 in bin 0, 10 out of range: share of bin 0 is 0.5, not 1.0.
    const Histogram h = make_hist(b, {10, 0}, 10);
    CHECK(build_alpha_mask(h, 0.6).bits == std::vector<std::uint8_t>{0, 0});
    CHECK(build_alpha_mask(h, 0.4).bits == std::vector<std::uint8_t>{1, 0});
}

TEST_CASE("masks are bitwise monotone in alpha") {
    const Binning b{0, 100, 10};
    const Histogram h = make_hist(b, {40, 1, 0, 25, 9, 3, 2, 12, 7, 1});
    AlphaMask prev = build_alpha_mask(h, 0.0);
    for (double alpha = 0.005; alpha <= 0.4001; alpha += 0.005) {
        const AlphaMask cur = build_alpha_mask(h, alpha);
        for (std::size_t i = 0; i < cur.bits.size(); ++i) {
            if (cur.bits[i] > prev.bits[i]) {
                FAIL("bit ", i, " turned back on at alpha=", alpha);
            }
        }
        CHECK(attack_success_rate(cur) <= attack_success_rate(prev));
        prev = cur;
    }
}

TEST_CASE("attack success rate is the mean of the bits") {
    const Binning b{0, 40, 10};
    AlphaMask mask;
    mask.alpha = 0.0;
    mask.binning = b;
    mask.bits = {1, 0, 1, 0};
    CHECK(attack_success_rate(mask) == doctest::Approx(0.5));
    mask.bits = {1, 1, 1, 1};
    CHECK(attack_success_rate(mask) == doctest::Approx(1.0));
}

TEST_CASE("classification accepts retained bins and rejects everything else") {
    const Binning b{0, 40, 10};
    const Histogram h = make_hist(b, {50, 0, 25, 0});
    const AlphaMask mask = build_alpha_mask(h, 0.1);
    CHECK(classify_mask(5, mask) == Label::Benign);
    CHECK(classify_mask(15, mask) == Label::Attack);
    CHECK(classify_mask(25, mask) == Label::Benign);
    CHECK(classify_mask(-1, mask) == Label::Attack);  // out of range
    CHECK(classify_mask(40, mask) == Label::Attack);  // on the upper edge: out
    SUBCASE("restated binning must match the mask") {
        CHECK(classify_mask(5, mask, b) == Label::Benign);
        CHECK_THROWS_AS(classify_mask(5, mask, Binning{0, 40, 20}), ConfigError);
    }
}

TEST_CASE("naive mask retains bins the benign side wins outright") {
    const Binning b{0, 40, 10};
    const Histogram benign = make_hist(b, {30, 10, 10, 0});
    const Histogram attack = make_hist(b, {5, 10, 30, 0});
    const AlphaMask mask = naive_cache_mask(benign, attack);
    // bin0: 30 > 5 keep; bin1: 10 > 10 false, drop; bin2: 10 > 30 drop;
    // bin3: 0 > 0 false, drop.
    CHECK(mask.bits == std::vector<std::uint8_t>{1, 0, 0, 0});

    SUBCASE("binnings must agree") {
        const Histogram other = make_hist(Binning{0, 80, 20}, {1, 1, 1, 1});
        CHECK_THROWS_AS(naive_cache_mask(benign, other), ConfigError);
    }
}

TEST_CASE("degenerate inputs are rejected") {
    const Binning b{0, 40, 10};
    const Histogram empty = make_hist(b, {0, 0, 0, 0});
    CHECK_THROWS_AS(build_alpha_mask(empty, 0.1), DataError);
    const Histogram h = make_hist(b, {1, 0, 0, 0});
    CHECK_THROWS_AS(build_alpha_mask(h, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(build_alpha_mask(h, 1.5), std::invalid_argument);
}
