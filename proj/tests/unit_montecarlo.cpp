#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "covertnet/montecarlo.hpp"
#include "covertnet/rng.hpp"
#include "helpers.hpp"

using namespace covertnet;

TEST_CASE("silent Alice makes both hypotheses coincide: DEP is identically 1") {
    FadingMap fm = testing::flat_map(20, 1.0e-13, 0.5e-13, 1.0e-13, 2.0e-13);
    const DepCurve c = empirical_dep_curve(fm, testing::urban_constants(), 0.0, 5, 300, 99);
    for (double z : c.zeta_emp) CHECK(z == doctest::Approx(1.0).epsilon(1e-12));
    for (double z : c.zeta_cf) CHECK(z == 1.0);
}

TEST_CASE("curves are deterministic in the seed and mode") {
    FadingMap fm = testing::flat_map(50, 1.0e-13, 0.5e-13, 1.0e-13, 2.0e-13);
    rng::Generator gen(1);
    for (auto& l : fm.lambda_mw) l = gen.uniform(0.2, 2.0) * 1e-13;
    const auto rc = testing::urban_constants();
    const DepCurve a = empirical_dep_curve(fm, rc, 0.05, 10, 500, 7);
    const DepCurve b = empirical_dep_curve(fm, rc, 0.05, 10, 500, 7);
    CHECK(a.zeta_emp == b.zeta_emp);
    const DepCurve c = empirical_dep_curve(fm, rc, 0.05, 10, 500, 8);
    CHECK(a.zeta_emp != c.zeta_emp);
    // Thread partitioning must not change the result.
    const DepCurve d = empirical_dep_curve(fm, rc, 0.05, 10, 500, 7, SelectionMode::kRatio, {512, 4});
    CHECK(a.zeta_emp == d.zeta_emp);
}

TEST_CASE("more cooperators raise the simulated minimum DEP") {
    const Scenario sc = load_scenario("configs/adverse.json");
    const FadingMap fm = fading_map(sc);
    auto min_emp = [&](std::size_t k) {
        const DepCurve c = empirical_dep_curve(fm, sc.constants, 0.1, k, 2000, 5);
        return *std::min_element(c.zeta_emp.begin(), c.zeta_emp.end());
    };
    // Allow two standard errors of slack at 2000 trials.
    CHECK(min_emp(60) >= min_emp(30) - 0.022);
}

TEST_CASE("empirical requirement search is deterministic and sane on a small case") {
    FadingMap fm = testing::flat_map(100, 1.0, 1.0, 1.0, 2.0);
    rng::Generator gen(3);
    for (auto& l : fm.lambda_mb) l = gen.uniform(0.1, 1.0);
    for (auto& l : fm.lambda_mw) l = gen.uniform(0.5, 2.0);
    const auto rc = testing::unit_constants();
    KminSearchOptions opts;
    opts.search_trials = 400;
    opts.confirm_trials = 1200;
    const EmpiricalKmin a = empirical_k_min(fm, rc, 0.4, 0.1, 42, opts);
    const EmpiricalKmin b = empirical_k_min(fm, rc, 0.4, 0.1, 42, opts);
    CHECK(a.k_min == b.k_min);
    CHECK(a.feasible == b.feasible);
    if (a.feasible) {
        CHECK(a.k_min >= 1);
        CHECK(a.k_min <= 100);
    }
}

TEST_CASE("simulation preconditions are enforced") {
    const FadingMap fm = testing::flat_map(10, 1.0e-13, 0.5e-13, 1.0e-13, 2.0e-13);
    const auto rc = testing::urban_constants();
    CHECK_THROWS_AS(empirical_dep_curve(fm, rc, 0.05, 0, 100, 1), std::domain_error);
    CHECK_THROWS_AS(empirical_dep_curve(fm, rc, 0.05, 11, 100, 1), std::domain_error);
    CHECK_THROWS_AS(empirical_dep_curve(fm, rc, 0.05, 5, 0, 1), std::domain_error);
    CHECK_THROWS_AS(empirical_dep_curve(fm, rc, -0.01, 5, 100, 1), std::domain_error);

    // Full-population selection is legal in both modes.
    CHECK_NOTHROW(empirical_dep_curve(fm, rc, 0.05, 10, 50, 1));
    CHECK_NOTHROW(empirical_dep_curve(fm, rc, 0.05, 10, 50, 1, SelectionMode::kUniform));

    OnOffOracleInstance inst;
    inst.lambda_mw.assign(9, 1.0);
    inst.g_mb.assign(9, 1.0);
    inst.p_max = 1.0;
    CHECK_THROWS_AS(on_off_brute_force(inst), std::domain_error);  // m > 8
    inst.lambda_mw.assign(3, 1.0);
    inst.g_mb.assign(3, 1.0);
    inst.grid_levels = 2;
    CHECK_THROWS_AS(on_off_brute_force(inst), std::domain_error);  // too few levels
}

TEST_CASE("zero constraint level is satisfied by silence") {
    OnOffOracleInstance inst;
    inst.lambda_mw = {1.0, 2.0, 3.0};
    inst.g_mb = {1.0, 1.0, 1.0};
    inst.p_max = 1.0;
    inst.grid_levels = 5;
    inst.delta_target = 0.0;
    const auto res = on_off_brute_force(inst);
    REQUIRE(res.feasible);
    CHECK(res.objective == 0.0);
    for (double p : res.powers) CHECK(p == 0.0);
}

TEST_CASE("a constraint at the box corner forces the all-on profile") {
    OnOffOracleInstance inst;
    inst.lambda_mw = {1.0, 2.0, 3.0, 0.5};
    inst.g_mb = {0.3, 1.0, 0.7, 0.2};
    inst.p_max = 1.0;
    inst.grid_levels = 4;
    inst.delta_target = 6.5;  // = sum lambda * p_max
    const auto res = on_off_brute_force(inst);
    REQUIRE(res.feasible);
    for (double p : res.powers) CHECK(p == 1.0);

    inst.delta_target = 6.6;
    CHECK_FALSE(on_off_brute_force(inst).feasible);
}

TEST_CASE("enumerated minimizers saturate users in ratio order") {
    rng::Generator gen(12);
    for (int rep = 0; rep < 25; ++rep) {
        OnOffOracleInstance inst;
        inst.p_max = 1.0;
        inst.grid_levels = 6;
        const std::size_t m = 5;
        inst.lambda_mw.resize(m);
        inst.g_mb.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            inst.lambda_mw[i] = gen.uniform(0.3, 2.5);
            inst.g_mb[i] = gen.uniform(0.3, 2.5);
        }
        double full = 0.0;
        for (double l : inst.lambda_mw) full += l;
        // Grid-aligned constraint level: prefix plus one exact level.
        inst.delta_target = full * 0.55;
        // Round down to the nearest grid-achievable value along the ratio order.
        std::vector<std::size_t> order{0, 1, 2, 3, 4};
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return inst.g_mb[a] / inst.lambda_mw[a] < inst.g_mb[b] / inst.lambda_mw[b];
        });
        double acc = 0.0;
        std::size_t j = 0;
        while (j < m && acc + inst.lambda_mw[order[j]] <= inst.delta_target) acc += inst.lambda_mw[order[j++]];
        if (j < m) {
            const double quantum = inst.p_max / static_cast<double>(inst.grid_levels - 1);
            const double need = inst.delta_target - acc;
            const std::size_t lvl = static_cast<std::size_t>(std::ceil(need / (inst.lambda_mw[order[j]] * quantum) - 1e-12));
            inst.delta_target = acc + inst.lambda_mw[order[j]] * quantum * static_cast<double>(lvl);
        }

        const auto res = on_off_brute_force(inst);
        REQUIRE(res.feasible);
        const auto st = on_off_structure(inst, res.powers);
        CHECK(st.prefix_in_ratio_order);
        CHECK(st.interior_count <= 1);
        CHECK(st.interior_is_boundary_user);
    }
}

TEST_CASE("surrogate constraint level reproduces the covertness target") {
    // With interference concentrated at psi^2 / M, the DEP at the surrogate
    // level must sit exactly on 1 - eps.
    for (double eps : {0.3, 0.1, 0.05, 0.01}) {
        const double p_a = 0.05, lambda_aw = 2e-13;
        const std::size_t m = 1000;
        const double psi = surrogate_interference_level(p_a, lambda_aw, eps, m);
        DetectionParams dp;
        dp.delta = p_a * lambda_aw;
        dp.sigma_big = psi * psi / static_cast<double>(m);
        dp.k = 10;
        dp.m = m;
        CHECK(min_dep(dp).zeta_min == doctest::Approx(1.0 - eps).epsilon(1e-10));
    }
}

TEST_CASE("feasible profiles exist at the surrogate level when users can supply it") {
    OnOffOracleInstance inst;
    inst.p_max = 1.0;
    inst.grid_levels = 7;
    inst.lambda_mw = {2.0e-13, 1.5e-13, 1.2e-13, 0.8e-13, 0.5e-13};
    inst.g_mb = {0.9, 0.4, 1.3, 0.2, 0.8};
    inst.delta_target = surrogate_interference_level(1e-3, 1.1e-13, 0.2, 5);
    REQUIRE(inst.delta_target < 6.0e-13);  // within the box's reach
    const auto res = on_off_brute_force(inst);
    CHECK(res.feasible);
    double psi = 0.0;
    for (std::size_t i = 0; i < 5; ++i) psi += inst.lambda_mw[i] * res.powers[i];
    CHECK(psi >= inst.delta_target * (1.0 - 1e-9));
}

TEST_CASE("simulated requirement scales as the inverse square of the tolerance") {
    // Restricted to tolerances well above the sampling noise floor: near
    // 1 - eps = 0.99 the grid minimum of a 10^4-trial curve sits ~0.01 below
    // its true value, which drowns the target (see README on the deep-tail
    // limits of the simulated search).
    const Scenario sc = load_scenario("configs/adverse.json");
    const FadingMap fm = fading_map(sc);
    KminSearchOptions opts;
    opts.search_trials = 2000;
    opts.confirm_trials = 8000;
    std::vector<double> xs, ys;
    for (double ome : {0.90, 0.925, 0.95, 0.96}) {
        const double eps = 1.0 - ome;
        const EmpiricalKmin ek = empirical_k_min(fm, sc.constants, 0.05, eps,
                                                 rng::derive_seed(3, rng::kOracle, 50), opts);
        REQUIRE(ek.feasible);
        xs.push_back(std::log(eps));
        ys.push_back(std::log(static_cast<double>(ek.k_min)));
    }
    double xm = 0, ym = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xm += xs[i];
        ym += ys[i];
    }
    xm /= static_cast<double>(xs.size());
    ym /= static_cast<double>(ys.size());
    double num = 0, den = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - xm) * (ys[i] - ym);
        den += (xs[i] - xm) * (xs[i] - xm);
    }
    const double slope = num / den;
    CHECK(slope > -2.3);
    CHECK(slope < -1.7);
}

TEST_CASE("sensitivity sweep emits one row per (value, seed) and closes the homogeneous gap") {
    SensitivityConfig cfg;
    cfg.user_count = 400;
    cfg.p_a = 0.05;  // keep both sweep points feasible at M = 400
    const auto rows = sensitivity_sweep(SweepParam::kSigmaD, {1.0, 60.0}, {1, 2, 3}, cfg,
                                        testing::urban_constants());
    REQUIRE(rows.size() == 6);
    for (const auto& r : rows) {
        CHECK(r.exact.feasible);
        if (r.value == 1.0) {
            const auto gap = (r.exact.k_min > r.homog.k_min) ? r.exact.k_min - r.homog.k_min
                                                             : r.homog.k_min - r.exact.k_min;
            CHECK(gap <= 2);
        } else {
            CHECK(r.homog.raw_root >= r.exact.raw_root);
        }
    }
}
