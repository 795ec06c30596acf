#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "covertnet/channel.hpp"
#include "covertnet/rng.hpp"
#include "helpers.hpp"

using namespace covertnet;

TEST_CASE("same seed reproduces the realization bit for bit") {
    const FadingMap fm = testing::flat_map(64, 2.0, 0.5);
    const ChannelRealization a = draw_realization(fm, 123);
    const ChannelRealization b = draw_realization(fm, 123);
    CHECK(a.g_ab == b.g_ab);
    CHECK(a.g_mw == b.g_mw);
    const ChannelRealization c = draw_realization(fm, 124);
    CHECK(a.g_ab != c.g_ab);
}

TEST_CASE("gains are exponential with the link coefficient as mean") {
    // Aggregate 1e5 draws of a unit-mean link.
    FadingMap fm = testing::flat_map(1, 1.0, 1.0);
    double sum = 0.0;
    std::vector<double> samples;
    samples.reserve(100000);
    for (std::uint64_t t = 0; t < 100000; ++t) {
        const ChannelRealization cr = draw_realization(fm, rng::derive_seed(42, rng::kRealization, t));
        sum += cr.g_mb[0];
        samples.push_back(cr.g_mb[0]);
    }
    const double mean = sum / 1e5;
    CHECK(mean > 0.99);
    CHECK(mean < 1.01);

    // Kolmogorov-Smirnov against 1 - exp(-x).
    std::sort(samples.begin(), samples.end());
    double d = 0.0;
    const double n = static_cast<double>(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = 1.0 - std::exp(-samples[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    }
    CHECK(d < 0.01);
}

TEST_CASE("selection order sorts ratios ascending") {
    FadingMap fm = testing::flat_map(3, 1.0, 1.0);
    ChannelRealization cr;
    cr.g_ab = cr.g_aw = 1.0;
    cr.g_mb = {5.0, 1.0, 3.0};
    cr.g_mw = {1.0, 1.0, 1.0};
    const SelectionOrder so = selection_order(cr, fm);
    CHECK(so.order == std::vector<std::size_t>{1, 2, 0});
}

TEST_CASE("ratio ties resolve by user index") {
    FadingMap fm = testing::flat_map(8, 1.0, 1.0);
    ChannelRealization cr;
    cr.g_ab = cr.g_aw = 1.0;
    cr.g_mb.assign(8, 2.0);
    cr.g_mw.assign(8, 1.0);
    cr.g_mb[4] = 1.0;
    cr.g_mb[7] = 1.0;
    const SelectionOrder so = selection_order(cr, fm);
    CHECK(so.order[0] == 4);
    CHECK(so.order[1] == 7);
    CHECK(so.order[2] == 0);
}

TEST_CASE("homogeneous Willie-side coefficients reduce to a Bob-gain sort") {
    FadingMap fm = testing::flat_map(50, 1.0, 0.37);
    const ChannelRealization cr = draw_realization(fm, 5);
    const SelectionOrder so = selection_order(cr, fm);
    std::vector<std::size_t> by_g(50);
    std::iota(by_g.begin(), by_g.end(), std::size_t{0});
    std::sort(by_g.begin(), by_g.end(),
              [&](std::size_t a, std::size_t b) { return cr.g_mb[a] < cr.g_mb[b]; });
    CHECK(so.order == by_g);
}

TEST_CASE("order is invariant under a positive rescale of all ratios") {
    FadingMap fm = testing::flat_map(40, 1.0, 0.5);
    const ChannelRealization cr = draw_realization(fm, 6);
    const SelectionOrder so = selection_order(cr, fm);

    FadingMap scaled = fm;
    for (auto& l : scaled.lambda_mw) l *= 17.0;  // scales every ratio by 1/17
    const SelectionOrder so2 = selection_order(cr, scaled);
    CHECK(so.order == so2.order);
}

TEST_CASE("the first K of the order are exactly the K smallest ratios") {
    rng::Generator gen(99);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t m = 30;
        FadingMap fm = testing::flat_map(m, 1.0, 1.0);
        for (auto& l : fm.lambda_mw) l = gen.uniform(0.1, 4.0);
        const ChannelRealization cr = draw_realization(fm, gen.next_u64());
        const SelectionOrder so = selection_order(cr, fm);
        std::vector<double> sorted = so.ratios;
        std::sort(sorted.begin(), sorted.end());
        const std::size_t k = 1 + static_cast<std::size_t>(gen.below(m));
        for (std::size_t i = 0; i < k; ++i) {
            CHECK(so.ratios[so.order[i]] == sorted[i]);
        }
    }
}
