#include <doctest.h>

#include <cmath>

#include "covertnet/channel.hpp"
#include "covertnet/cooperation.hpp"
#include "covertnet/mathutil.hpp"
#include "covertnet/rng.hpp"
#include "helpers.hpp"

using namespace covertnet;

TEST_CASE("covertness constant: boundary and reference values") {
    CHECK_THROWS_AS(c_epsilon(0.5), std::domain_error);
    CHECK_THROWS_AS(c_epsilon(0.0), std::domain_error);
    CHECK_THROWS_AS(c_epsilon(0.7), std::domain_error);
    CHECK(c_epsilon(0.05) == doctest::Approx(62.3957).epsilon(1e-4));
    CHECK(c_epsilon(0.05) == doctest::Approx((400.0 - 8.0 + 0.04) / (2.0 * kPi)).epsilon(1e-14));
}

TEST_CASE("homogeneous population has zero variance and squared-mean second moment") {
    const FadingMap fm = testing::flat_map(64, 1.0, 0.125);
    const auto st = cooperation_stats(fm, 0.05, 0.05, testing::unit_constants());
    CHECK(st.v_moment == 0.0);
    CHECK(st.e_moment == doctest::Approx(0.125 * 0.125).epsilon(1e-14));
}

TEST_CASE("second moment minus variance is the squared mean") {
    rng::Generator gen(5);
    for (int rep = 0; rep < 30; ++rep) {
        const std::size_t m = 2 + static_cast<std::size_t>(gen.below(400));
        FadingMap fm = testing::flat_map(m, 1.0, 1.0);
        double mean = 0.0;
        for (auto& l : fm.lambda_mw) {
            l = std::exp(gen.uniform(-31.0, -27.0));
            mean += l;
        }
        mean /= static_cast<double>(m);
        const auto st = cooperation_stats(fm, 0.1, 0.03, testing::urban_constants());
        CHECK(std::abs((st.e_moment - st.v_moment) - mean * mean) <= 1e-12 * mean * mean);
    }
}

TEST_CASE("zero-variance populations use the analytic limit") {
    // Build stats with V = 0 and C E = 0.02 directly: the requirement is 1/(CE) = 50.
    CooperationStats st;
    st.e_moment = 1.0;
    st.v_moment = 0.0;
    st.c_const = 0.02;
    const KminResult k = k_min_exact(st, 1000);
    CHECK(k.raw_root == doctest::Approx(50.0).epsilon(1e-12));
    CHECK(k.k_min == 50);
    CHECK(k.feasible);
}

TEST_CASE("requirement grows with power and with stringency") {
    const Scenario sc = load_scenario("configs/adverse.json");
    const FadingMap fm = fading_map(sc);
    double prev = 0.0;
    for (double p_a : {0.01, 0.02, 0.05, 0.1}) {
        const auto k = k_min_exact(cooperation_stats(fm, p_a, 0.05, sc.constants), 1000);
        CHECK(k.raw_root > prev);
        prev = k.raw_root;
    }
    // Full power at this stringency outruns what the whole population can mask.
    CHECK_FALSE(k_min_exact(cooperation_stats(fm, 0.2, 0.05, sc.constants), 1000).feasible);
    prev = 0.0;
    for (double eps : {0.2, 0.1, 0.05, 0.02, 0.01}) {
        const auto k = k_min_exact(cooperation_stats(fm, 0.025, eps, sc.constants), 1000);
        CHECK(k.raw_root > prev);
        prev = k.raw_root;
    }
}

TEST_CASE("documented topology reproduces the benchmark requirements") {
    const Scenario sc = load_scenario("configs/adverse.json");
    const FadingMap fm = fading_map(sc);
    CHECK(k_min_exact(cooperation_stats(fm, 0.025, 0.05, sc.constants), 1000).k_min == 12);
    CHECK(k_min_exact(cooperation_stats(fm, 0.025, 0.025, sc.constants), 1000).k_min == 50);
}

TEST_CASE("infeasibility is a result, not an error") {
    // Huge variance relative to the mean square forces a negative discriminant.
    CooperationStats st;
    st.e_moment = 1.0;
    st.v_moment = 0.9;
    st.c_const = 1e-4;  // requirement far above any population
    const KminResult k = k_min_exact(st, 10);
    if (k.feasible) {
        CHECK(k.k_min <= 10);
    } else {
        CHECK((std::isnan(k.raw_root) || k.k_min > 10));
    }

    // root > M marks infeasible but keeps the root.
    CooperationStats st2;
    st2.e_moment = 1.0;
    st2.v_moment = 0.0;
    st2.c_const = 0.02;
    const KminResult k2 = k_min_exact(st2, 10);
    CHECK_FALSE(k2.feasible);
    CHECK(k2.raw_root == doctest::Approx(50.0));
}

TEST_CASE("asymptotic form stays within one user of the exact root") {
    const Scenario sc = load_scenario("configs/adverse.json");
    const FadingMap fm = fading_map(sc);
    for (double p_a : {0.01, 0.025, 0.05}) {
        const auto st = cooperation_stats(fm, p_a, 0.05, sc.constants);
        const auto e = k_min_exact(st, 1000);
        const auto a = k_min_asymptotic(st, 1000);
        const auto gap = (e.k_min > a.k_min) ? e.k_min - a.k_min : a.k_min - e.k_min;
        CHECK(gap <= 1);
    }
}

TEST_CASE("homogeneous reduction: cancellation and quadratic power scaling") {
    const auto rc = testing::urban_constants();
    // lambda_aw = lambda_bar and p_a = P_max cancel everything but c_eps.
    const auto k = k_min_homogeneous(rc.p_max_w(), 3e-13, 3e-13, 0.05, rc, 100000);
    CHECK(k.raw_root == doctest::Approx(c_epsilon(0.05)).epsilon(1e-12));
    CHECK(k.k_min == ceil_with_slack(c_epsilon(0.05)));

    const auto k1 = k_min_homogeneous(0.05, 3e-13, 1e-13, 0.05, rc, 100000);
    const auto k2 = k_min_homogeneous(0.10, 3e-13, 1e-13, 0.05, rc, 100000);
    CHECK(k2.raw_root == doctest::Approx(4.0 * k1.raw_root).epsilon(1e-12));
}

TEST_CASE("homogeneous formula overestimates on the heterogeneous benchmark") {
    const Scenario sc = load_scenario("configs/adverse.json");
    const FadingMap fm = fading_map(sc);
    double lambda_bar = 0.0;
    for (double l : fm.lambda_mw) lambda_bar += l;
    lambda_bar /= 1000.0;
    for (double p_a : {0.025, 0.05, 0.1}) {
        const auto e = k_min_exact(cooperation_stats(fm, p_a, 0.03, sc.constants), 1000);
        const auto h = k_min_homogeneous(p_a, fm.lambda_aw, lambda_bar, 0.03, sc.constants, 1000);
        CHECK(h.raw_root >= e.raw_root);
    }
}

TEST_CASE("power-of-count inverts the count-of-power root") {
    const Scenario sc = load_scenario("configs/adverse.json");
    const FadingMap fm = fading_map(sc);
    const auto probe = cooperation_stats(fm, 0.1, 0.04, sc.constants);
    rng::Generator gen(11);
    for (int rep = 0; rep < 50; ++rep) {
        const double k_bar = 1.0 + static_cast<double>(gen.below(1000));
        const double p = pa_of_k(k_bar, probe.e_moment, probe.v_moment, fm.lambda_aw, 0.04,
                                 sc.constants, 1000);
        const auto back = k_min_exact(cooperation_stats(fm, p, 0.04, sc.constants), 1000);
        CHECK(std::abs(back.raw_root - k_bar) <= 1e-6 * k_bar);
    }
}

TEST_CASE("power-of-count endpoints") {
    const auto rc = testing::urban_constants();
    CHECK(pa_of_k(0.0, 1e-27, 1e-28, 2e-13, 0.05, rc, 1000) == 0.0);
    // V = 0 at full population: P_max / (sqrt(c_eps) lambda_aw) * sqrt(E M).
    const double e = 2.5e-27;
    const double got = pa_of_k(1000.0, e, 0.0, 2e-13, 0.05, rc, 1000);
    const double want = rc.p_max_w() / (std::sqrt(c_epsilon(0.05)) * 2e-13) * std::sqrt(e * 1000.0);
    CHECK(got == doctest::Approx(want).epsilon(1e-12));
    CHECK_THROWS_AS(pa_of_k(2000.0, e, 0.0, 2e-13, 0.05, rc, 1000), std::domain_error);
}

TEST_CASE("power-of-count is strictly increasing below the quadratic vertex") {
    const auto rc = testing::urban_constants();
    const double e = 2.0e-27, v = 0.8e-27, law = 2e-13;
    const std::size_t m = 1000;
    const double vertex = static_cast<double>(m) * (e + v) / (2.0 * v);
    double prev = -1.0;
    for (double k = 0.0; k <= std::min(vertex, 1000.0); k += 25.0) {
        const double p = pa_of_k(k, e, v, law, 0.05, rc, m);
        CHECK(p > prev);
        prev = p;
    }
}

TEST_CASE("conjugate root form agrees with the literal quadratic solution") {
    // (M(E+V)/2V)(1 - sqrt(1 - 4V/(C M (E+V)^2))) written without cancellation.
    rng::Generator gen(23);
    for (int rep = 0; rep < 100; ++rep) {
        CooperationStats st;
        st.e_moment = std::exp(gen.uniform(-62.0, -58.0));
        st.v_moment = st.e_moment * gen.uniform(0.05, 0.95);
        st.c_const = gen.uniform(0.5, 50.0) / (1000.0 * st.e_moment);
        const std::size_t m = 1000;
        const double md = static_cast<double>(m);
        const double ev = st.e_moment + st.v_moment;
        const double x = 4.0 * st.v_moment / (st.c_const * md * ev * ev);
        if (x > 1.0) continue;
        const double literal = md * ev / (2.0 * st.v_moment) * (1.0 - std::sqrt(1.0 - x));
        const auto k = k_min_exact(st, m);
        CHECK(k.raw_root == doctest::Approx(literal).epsilon(1e-10));
    }
}

TEST_CASE("activation threshold selects exactly k users") {
    FadingMap fm = testing::flat_map(25, 1.0, 1.0);
    rng::Generator gen(8);
    for (auto& l : fm.lambda_mw) l = gen.uniform(0.2, 2.0);
    const ChannelRealization cr = draw_realization(fm, 21);
    const SelectionOrder so = selection_order(cr, fm);

    CHECK(activation_threshold(so, 25) == doctest::Approx(so.ratios[so.order[24]]));
    CHECK(activation_threshold(so, 1) == doctest::Approx(so.ratios[so.order[0]]));
    CHECK(activation_threshold(so, 0) < so.ratios[so.order[0]]);

    for (std::size_t k : {std::size_t{1}, std::size_t{7}, std::size_t{24}}) {
        const double tau = activation_threshold(so, k);
        std::size_t active = 0;
        for (double r : so.ratios)
            if (r <= tau) ++active;
        CHECK(active == k);
    }
}
