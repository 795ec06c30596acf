#include "covertnet/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "covertnet/channel.hpp"
#include "covertnet/cooperation.hpp"
#include "covertnet/detection.hpp"
#include "covertnet/mathutil.hpp"
#include "covertnet/optimizer.hpp"
#include "covertnet/rng.hpp"

namespace covertnet {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

Scenario fresh_adverse(const ValidationConfig& cfg, std::size_t count, std::uint64_t seed) {
    AnnulusSpec spec = cfg.annulus;
    spec.count = count;
    spec.seed = seed;
    return generate_adverse_scenario(cfg.scenario.alice, cfg.scenario.bob, cfg.scenario.willie,
                                     spec, cfg.scenario.constants);
}

double population_mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

// ---- detection-validation combos: (K, P_a in W) matching the benchmark plots
constexpr struct {
    std::size_t k;
    double p_a;
} kDepCombos[] = {{60, 0.0667}, {60, 0.1}, {30, 0.1}};

struct DepComboStats {
    double sup_ratio;      // sup |cf - emp| with the real (ratio) selection
    double sup_uniform;    // same with the model's uniform selection
    double zeta_min_cf;
    double zeta_min_emp;
    long argmin_steps;     // grid-index distance between cf and emp minima
    double elapsed_s;
};

DepComboStats dep_combo_stats(const ValidationConfig& cfg, std::size_t k, double p_a,
                              std::uint64_t eval_index, bool with_uniform) {
    const FadingMap fm = fading_map(cfg.scenario);
    const std::size_t trials = cfg.quick ? cfg.dep_trials / 10 : cfg.dep_trials;
    const std::uint64_t seed = rng::derive_seed(cfg.scenario.seed, rng::kOracle, 100 + eval_index);

    const auto t0 = Clock::now();
    const DepCurve ratio_curve = empirical_dep_curve(fm, cfg.scenario.constants, p_a, k, trials,
                                                     seed, SelectionMode::kRatio,
                                                     {512, cfg.threads});
    DepComboStats st{};
    st.elapsed_s = seconds_since(t0);

    DepCurve uniform_curve;
    if (with_uniform) {
        uniform_curve = empirical_dep_curve(fm, cfg.scenario.constants, p_a, k, trials, seed,
                                            SelectionMode::kUniform, {512, cfg.threads});
    }
    st.sup_ratio = 0.0;
    st.sup_uniform = 0.0;
    std::size_t emp_argmin = 0;
    for (std::size_t i = 0; i < ratio_curve.gamma_grid.size(); ++i) {
        st.sup_ratio = std::max(st.sup_ratio, std::abs(ratio_curve.zeta_cf[i] - ratio_curve.zeta_emp[i]));
        if (with_uniform) {
            st.sup_uniform = std::max(
                st.sup_uniform, std::abs(uniform_curve.zeta_cf[i] - uniform_curve.zeta_emp[i]));
        }
        if (ratio_curve.zeta_emp[i] < ratio_curve.zeta_emp[emp_argmin]) emp_argmin = i;
    }

    const DetectionParams params = detection_params(p_a, fm, k, cfg.scenario.constants);
    st.zeta_min_cf = min_dep(params).zeta_min;
    st.zeta_min_emp = *std::min_element(ratio_curve.zeta_emp.begin(), ratio_curve.zeta_emp.end());

    const double gamma_star = optimal_gamma(params);
    const double step = ratio_curve.gamma_grid[1] - ratio_curve.gamma_grid[0];
    const long star_idx = std::lround((gamma_star - ratio_curve.gamma_grid.front()) / step);
    st.argmin_steps = std::labs(star_idx - static_cast<long>(emp_argmin));
    return st;
}

CheckResult check_dep_supnorm(const ValidationConfig& cfg) {
    CheckResult r{"dep-supnorm",
                  "closed-form DEP curve vs simulated energy detection, sup-norm <= 0.05", true, ""};
    std::ostringstream oss;
    for (std::size_t i = 0; i < 3; ++i) {
        const auto st = dep_combo_stats(cfg, kDepCombos[i].k, kDepCombos[i].p_a, i, true);
        const bool ok = st.sup_ratio <= 0.05 && st.elapsed_s <= 60.0;
        r.passed = r.passed && ok;
        oss << fmt("(K=%zu,Pa=%.1fmW): sup=%.4f uniform-selection sup=%.4f %.1fs; ",
                   kDepCombos[i].k, kDepCombos[i].p_a * 1000.0, st.sup_ratio, st.sup_uniform,
                   st.elapsed_s);
    }
    r.detail = oss.str();
    return r;
}

CheckResult check_dep_zeta_min(const ValidationConfig& cfg) {
    CheckResult r{"dep-zeta-min", "minimum-DEP closed form within 0.02 of the simulated minimum",
                  true, ""};
    std::ostringstream oss;
    for (std::size_t i = 0; i < 3; ++i) {
        const auto st = dep_combo_stats(cfg, kDepCombos[i].k, kDepCombos[i].p_a, i, false);
        const double gap = std::abs(st.zeta_min_cf - st.zeta_min_emp);
        r.passed = r.passed && gap <= 0.02;
        oss << fmt("(K=%zu,Pa=%.1fmW): cf=%.4f emp=%.4f gap=%.4f; ", kDepCombos[i].k,
                   kDepCombos[i].p_a * 1000.0, st.zeta_min_cf, st.zeta_min_emp, gap);
    }
    r.detail = oss.str();
    return r;
}

CheckResult check_dep_argmin(const ValidationConfig& cfg) {
    CheckResult r{"dep-argmin",
                  "optimal threshold within 2 grid steps of the simulated argmin", true, ""};
    std::ostringstream oss;
    for (std::size_t i = 0; i < 3; ++i) {
        const auto st = dep_combo_stats(cfg, kDepCombos[i].k, kDepCombos[i].p_a, i, false);
        r.passed = r.passed && st.argmin_steps <= 2;
        oss << fmt("(K=%zu,Pa=%.1fmW): argmin distance %ld steps; ", kDepCombos[i].k,
                   kDepCombos[i].p_a * 1000.0, st.argmin_steps);
    }
    oss << "(valley is flat relative to the sampling noise, so the simulated argmin wanders)";
    r.detail = oss.str();
    return r;
}

CheckResult check_kmin_agreement(const ValidationConfig& cfg) {
    CheckResult r{"kmin-agreement",
                  "closed-form vs simulated cooperator requirement within max(3, 10%)", true, ""};
    const FadingMap fm = fading_map(cfg.scenario);
    const double eps = 0.03;
    std::ostringstream oss;
    const std::size_t seeds = cfg.quick ? 2 : cfg.kmin_seeds;
    KminSearchOptions opts = cfg.kmin_opts;
    opts.threads = cfg.threads;
    if (cfg.quick) {
        opts.search_trials /= 4;
        opts.confirm_trials /= 4;
    }
    for (double p_a : {0.05, 0.1}) {
        const KminResult exact =
            k_min_exact(cooperation_stats(fm, p_a, eps, cfg.scenario.constants), fm.user_count());
        const double tol = std::max(3.0, 0.1 * static_cast<double>(exact.k_min));
        oss << fmt("Pa=%.0fmW exact=%zu emp=[", p_a * 1000.0, exact.k_min);
        double mean = 0.0;
        std::size_t feasible_count = 0;
        for (std::size_t j = 0; j < seeds; ++j) {
            const auto emp = empirical_k_min(fm, cfg.scenario.constants, p_a, eps,
                                             rng::derive_seed(cfg.scenario.seed, rng::kOracle, 2000 + j),
                                             opts);
            const bool ok = emp.feasible &&
                            std::abs(static_cast<double>(emp.k_min) -
                                     static_cast<double>(exact.k_min)) <= tol;
            r.passed = r.passed && ok;
            if (emp.feasible) {
                mean += static_cast<double>(emp.k_min);
                ++feasible_count;
            }
            oss << (emp.feasible ? fmt("%zu", emp.k_min) : std::string("inf"))
                << (j + 1 < seeds ? "," : "");
        }
        if (feasible_count > 0)
            oss << fmt("] mean=%.1f; ", mean / static_cast<double>(feasible_count));
        else
            oss << "]; ";
    }
    r.detail = oss.str();
    return r;
}

CheckResult check_kmin_anchors(const ValidationConfig& cfg) {
    CheckResult r{"kmin-anchors",
                  "cooperator requirement at 1-eps=0.97 vs reference values 90/245 (+/-15%)", true,
                  ""};
    const FadingMap fm = fading_map(cfg.scenario);
    std::ostringstream oss;
    const struct {
        double p_a;
        double anchor;
    } pts[] = {{0.05, 90.0}, {0.1, 245.0}};
    for (const auto& pt : pts) {
        const KminResult exact =
            k_min_exact(cooperation_stats(fm, pt.p_a, 0.03, cfg.scenario.constants), fm.user_count());
        const double dev = (static_cast<double>(exact.k_min) - pt.anchor) / pt.anchor;
        r.passed = r.passed && std::abs(dev) <= 0.15;
        oss << fmt("Pa=%.0fmW: k_min=%zu vs %g (%+.1f%%); ", pt.p_a * 1000.0, exact.k_min,
                   pt.anchor, dev * 100.0);
    }
    oss << "(no population admits both references: the covert equality forces "
           "k(100mW) >= 4 k(50mW), the references have ratio 2.72)";
    r.detail = oss.str();
    return r;
}

std::vector<double> one_minus_eps_grid() {
    std::vector<double> g;
    for (int i = 90; i <= 99; ++i) g.push_back(static_cast<double>(i) / 100.0);
    return g;
}

CheckResult check_eps_slope(const ValidationConfig& cfg) {
    CheckResult r{"eps-slope", "log-log slope of cooperator requirement vs tolerance in [-2.3,-1.7]",
                  true, ""};
    const FadingMap fm = fading_map(cfg.scenario);
    std::vector<double> xs, ys;
    for (double ome : one_minus_eps_grid()) {
        const double eps = 1.0 - ome;
        const KminResult k =
            k_min_exact(cooperation_stats(fm, 0.025, eps, cfg.scenario.constants), fm.user_count());
        xs.push_back(std::log(eps));
        ys.push_back(std::log(static_cast<double>(k.k_min)));
    }
    const double xm = population_mean(xs), ym = population_mean(ys);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - xm) * (ys[i] - ym);
        den += (xs[i] - xm) * (xs[i] - xm);
    }
    const double slope = num / den;
    r.passed = slope >= -2.3 && slope <= -1.7;
    r.detail = fmt("slope=%.3f over 1-eps in [0.90, 0.99] at Pa=25mW", slope);
    return r;
}

CheckResult check_eps_anchors(const ValidationConfig& cfg) {
    CheckResult r{"eps-anchors",
                  "cooperator requirement at Pa=25mW vs reference values 12@0.95, 50@0.975 (+/-20%)",
                  true, ""};
    const FadingMap fm = fading_map(cfg.scenario);
    std::ostringstream oss;
    const struct {
        double eps;
        double anchor;
    } pts[] = {{0.05, 12.0}, {0.025, 50.0}};
    for (const auto& pt : pts) {
        const KminResult k =
            k_min_exact(cooperation_stats(fm, 0.025, pt.eps, cfg.scenario.constants), fm.user_count());
        const double dev = (static_cast<double>(k.k_min) - pt.anchor) / pt.anchor;
        r.passed = r.passed && std::abs(dev) <= 0.20;
        oss << fmt("1-eps=%.3f: k_min=%zu vs %g (%+.1f%%); ", 1.0 - pt.eps, k.k_min, pt.anchor,
                   dev * 100.0);
    }
    r.detail = oss.str();
    return r;
}

CheckResult check_asym_gap(const ValidationConfig& cfg) {
    CheckResult r{"asym-gap", "exact vs asymptotic cooperator requirement within 1 user", true, ""};
    std::ostringstream oss;
    const std::size_t n_seeds = cfg.quick ? 5 : 20;
    std::size_t worst = 0;
    for (std::size_t m : {std::size_t{500}, std::size_t{1000}, std::size_t{2000}}) {
        for (std::size_t s = 0; s < n_seeds; ++s) {
            const Scenario sc = fresh_adverse(cfg, m, 40000 + s);
            const FadingMap fm = fading_map(sc);
            const CooperationStats st = cooperation_stats(fm, 0.025, 0.05, cfg.scenario.constants);
            const KminResult e = k_min_exact(st, m);
            const KminResult a = k_min_asymptotic(st, m);
            const std::size_t gap = (e.k_min > a.k_min) ? e.k_min - a.k_min : a.k_min - e.k_min;
            worst = std::max(worst, gap);
            if (gap > 1) r.passed = false;
        }
    }
    oss << fmt("max |exact-asym| = %zu over M in {500,1000,2000} x %zu topologies (Pa=25mW, eps=0.05)",
               worst, n_seeds);
    r.detail = oss.str();
    return r;
}

CheckResult check_homog_reduction(const ValidationConfig& cfg) {
    CheckResult r{"homog-reduction",
                  "homogeneous formula: matches exact as spread -> 0, overestimates on the benchmark",
                  true, ""};
    std::ostringstream oss;

    // Vanishing-spread family: gap must close.
    std::size_t worst_gap = 0;
    for (std::uint64_t s = 1; s <= 10; ++s) {
        Scenario sc;
        sc.alice = cfg.scenario.alice;
        sc.bob = cfg.scenario.bob;
        sc.willie = cfg.scenario.willie;
        sc.constants = cfg.scenario.constants;
        sc.seed = s;
        sc.users = ring_users(cfg.scenario.willie, 650.0, 0.5, 1000, s);
        const FadingMap fm = fading_map(sc);
        const CooperationStats st = cooperation_stats(fm, 0.1, 0.03, sc.constants);
        const KminResult e = k_min_exact(st, 1000);
        const KminResult h = k_min_homogeneous(0.1, fm.lambda_aw, population_mean(fm.lambda_mw),
                                               0.03, sc.constants, 1000);
        const std::size_t gap = (e.k_min > h.k_min) ? e.k_min - h.k_min : h.k_min - e.k_min;
        worst_gap = std::max(worst_gap, gap);
        if (gap > 2) r.passed = false;
    }
    oss << fmt("sigma_d->0: max |exact-homog| = %zu (<=2); ", worst_gap);

    // Benchmark geometry: the homogeneous requirement must never undercut.
    bool over = true;
    for (std::uint64_t s = 0; s < 20; ++s) {
        const Scenario sc = fresh_adverse(cfg, cfg.annulus.count, 41000 + s);
        const FadingMap fm = fading_map(sc);
        for (const auto& op : {std::pair{0.025, 0.05}, std::pair{0.1, 0.03}}) {
            const CooperationStats st = cooperation_stats(fm, op.first, op.second, sc.constants);
            const KminResult e = k_min_exact(st, fm.user_count());
            const KminResult h = k_min_homogeneous(op.first, fm.lambda_aw,
                                                   population_mean(fm.lambda_mw), op.second,
                                                   sc.constants, fm.user_count());
            if (!(h.raw_root >= e.raw_root)) over = false;
        }
    }
    r.passed = r.passed && over;
    oss << (over ? "homog >= exact on every adverse draw" : "homog undercut exact on some draw");
    r.detail = oss.str();
    return r;
}

CheckResult check_sensitivity_trends(const ValidationConfig& cfg) {
    CheckResult r{"sensitivity-trends",
                  "requirement decreasing in distance spread, increasing in mean distance", true, ""};
    std::ostringstream oss;
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t s = 1; s <= 10; ++s) seeds.push_back(s);
    SensitivityConfig scfg;
    scfg.alice = cfg.scenario.alice;
    scfg.bob = cfg.scenario.bob;
    scfg.willie = cfg.scenario.willie;

    auto majority_monotone = [&](SweepParam param, const std::vector<double>& values,
                                 bool decreasing) {
        const auto rows = sensitivity_sweep(param, values, seeds, scfg, cfg.scenario.constants);
        // rows are grouped by value, then seed
        for (std::size_t v = 0; v + 1 < values.size(); ++v) {
            std::size_t votes = 0;
            for (std::size_t s = 0; s < seeds.size(); ++s) {
                const auto& a = rows[v * seeds.size() + s].exact;
                const auto& b = rows[(v + 1) * seeds.size() + s].exact;
                const bool strict = decreasing ? b.k_min < a.k_min : b.k_min > a.k_min;
                if (strict) ++votes;
            }
            if (2 * votes <= seeds.size()) return false;
        }
        return true;
    };

    const bool sig_ok = majority_monotone(SweepParam::kSigmaD, {10, 45, 80, 115, 150}, true);
    const bool mu_ok = majority_monotone(SweepParam::kMuD, {500, 550, 600, 650, 700}, false);
    r.passed = sig_ok && mu_ok;
    oss << "sigma_d sweep " << (sig_ok ? "decreasing" : "NOT decreasing") << ", mu_d sweep "
        << (mu_ok ? "increasing" : "NOT increasing") << " (majority over 10 seeds per step)";
    r.detail = oss.str();
    return r;
}

CheckResult check_optimality(const ValidationConfig& cfg) {
    CheckResult r{"optimality", "piecewise search beats a 4096-point power grid within 1e-6", true,
                  ""};
    std::ostringstream oss;
    const std::size_t n = cfg.quick ? 10 : 50;
    const double p_max = cfg.scenario.constants.p_max_w();
    const double eps_cycle[] = {0.03, 0.05, 0.1};
    double worst_defect = 0.0;
    double worst_time = 0.0;
    bool covert_ok = true;
    for (std::size_t i = 0; i < n; ++i) {
        const Scenario sc = fresh_adverse(cfg, cfg.annulus.count, 42000 + i);
        const FadingMap fm = fading_map(sc);
        const ChannelRealization cr =
            draw_realization(fm, rng::derive_seed(cfg.scenario.seed, rng::kRealization, 7000 + i));
        const double eps = eps_cycle[i % 3];

        const auto t0 = Clock::now();
        const OptimizationResult res = piecewise_search(cr, fm, eps, sc.constants);
        worst_time = std::max(worst_time, seconds_since(t0));

        // Independent grid oracle: sort by ratio, prefix interference sums.
        std::vector<std::size_t> order(fm.user_count());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::vector<double> ratio(fm.user_count());
        for (std::size_t m = 0; m < fm.user_count(); ++m) ratio[m] = cr.g_mb[m] / fm.lambda_mw[m];
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (ratio[a] != ratio[b]) return ratio[a] < ratio[b];
            return a < b;
        });
        std::vector<double> prefix(fm.user_count() + 1, 0.0);
        for (std::size_t m = 0; m < fm.user_count(); ++m)
            prefix[m + 1] = prefix[m] + p_max * cr.g_mb[order[m]];

        double grid_best = 0.0;
        CooperationStats st = cooperation_stats(fm, p_max, eps, sc.constants);
        for (std::size_t j = 1; j <= 4096; ++j) {
            const double p = p_max * static_cast<double>(j) / 4096.0;
            st.p_a = p;
            st.c_const = p_max * p_max / (p * p * st.lambda_aw * st.lambda_aw * st.c_eps);
            const KminResult need = k_min_exact(st, fm.user_count());
            if (!need.feasible) continue;
            const double rate =
                std::log2(1.0 + p * cr.g_ab / (prefix[need.k_min] + sc.constants.sigma_b_sq()));
            grid_best = std::max(grid_best, rate);
        }
        worst_defect = std::max(worst_defect, grid_best - res.rate_star);

        if (res.feasible) {
            const DetectionParams dp = detection_params(res.p_a_star, fm, res.k_star, sc.constants);
            if (!(min_dep(dp).zeta_min >= 1.0 - eps - 1e-6)) covert_ok = false;
        }
    }
    r.passed = worst_defect <= 1e-6 && worst_time <= 1.0 && covert_ok;
    oss << fmt("worst grid-advantage=%.2e (<=1e-6), worst runtime=%.3fs (<=1s), covert constraint %s",
               worst_defect, worst_time, covert_ok ? "held" : "VIOLATED");
    r.detail = oss.str();
    return r;
}

CheckResult check_baseline(const ValidationConfig& cfg) {
    CheckResult r{"baseline", "ratio policy dominates Bob-only policy; power backoff under stringency",
                  true, ""};
    std::ostringstream oss;
    const FadingMap fm = fading_map(cfg.scenario);
    const std::size_t n_real = cfg.quick ? 20 : 100;
    const auto grid = one_minus_eps_grid();

    std::vector<double> avg_p(grid.size(), 0.0);
    std::vector<bool> baseline_feasible(grid.size(), true);
    std::vector<bool> proposed_feasible(grid.size(), true);
    bool dominance = true;

    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        const double eps = 1.0 - grid[gi];
        for (std::size_t t = 0; t < n_real; ++t) {
            // Common random numbers across the stringency grid.
            const ChannelRealization cr =
                draw_realization(fm, rng::derive_seed(cfg.scenario.seed, rng::kRealization, 9000 + t));
            const OptimizationResult prop = piecewise_search(cr, fm, eps, cfg.scenario.constants);
            const OptimizationResult base = baseline_policy(cr, fm, eps, cfg.scenario.constants);
            if (!prop.feasible) proposed_feasible[gi] = false;
            if (!base.feasible) baseline_feasible[gi] = false;
            if (prop.feasible) avg_p[gi] += prop.p_a_star / cfg.scenario.constants.p_max_w();
            if (prop.feasible && base.feasible && prop.rate_star < base.rate_star - 1e-12)
                dominance = false;
        }
        avg_p[gi] /= static_cast<double>(n_real);
    }

    bool trend = true;
    for (std::size_t gi = 3; gi + 1 < grid.size(); ++gi) {  // from 1-eps = 0.93
        if (avg_p[gi + 1] > avg_p[gi] + 1e-12) trend = false;
    }
    bool stringency = false;
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        if (grid[gi] >= 0.97 && !baseline_feasible[gi] && proposed_feasible[gi]) stringency = true;
    }
    r.passed = dominance && trend && stringency;
    oss << fmt("dominance=%s, Pa*/Pmax non-increasing from 0.93=%s, ", dominance ? "yes" : "NO",
               trend ? "yes" : "NO");
    oss << "baseline infeasible at {";
    for (std::size_t gi = 0; gi < grid.size(); ++gi)
        if (!baseline_feasible[gi]) oss << fmt("%.2f ", grid[gi]);
    oss << "}";
    r.detail = oss.str();
    return r;
}

CheckResult check_onoff_structure(const ValidationConfig& cfg) {
    CheckResult r{"onoff-structure",
                  "enumerated interference minimizers follow the threshold (on-off) shape", true, ""};
    (void)cfg;
    rng::Generator gen(rng::derive_seed(977, rng::kOracle, 0));
    std::size_t counterexamples = 0;
    for (std::size_t i = 0; i < 100; ++i) {
        OnOffOracleInstance inst;
        const std::size_t m = 3 + static_cast<std::size_t>(gen.below(4));  // 3..6 users
        inst.grid_levels = 6 + static_cast<std::size_t>(gen.below(3));     // 6..8 levels
        inst.p_max = 1.0;
        inst.lambda_mw.resize(m);
        inst.g_mb.resize(m);
        for (std::size_t j = 0; j < m; ++j) {
            inst.lambda_mw[j] = gen.uniform(0.2, 3.0);
            inst.g_mb[j] = gen.uniform(0.2, 3.0);
        }
        // Aim the constraint at a grid-representable level so the continuous
        // optimum is admissible; the enumerated minimizer must then realize it.
        std::vector<std::size_t> order(m);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return inst.g_mb[a] / inst.lambda_mw[a] < inst.g_mb[b] / inst.lambda_mw[b];
        });
        const std::size_t prefix = static_cast<std::size_t>(gen.below(m + 1));
        double delta = 0.0;
        for (std::size_t j = 0; j < prefix; ++j) delta += inst.lambda_mw[order[j]] * inst.p_max;
        if (prefix < m) {
            const std::size_t level = static_cast<std::size_t>(gen.below(inst.grid_levels));
            delta += inst.lambda_mw[order[prefix]] * inst.p_max * static_cast<double>(level) /
                     static_cast<double>(inst.grid_levels - 1);
        }
        inst.delta_target = delta;

        const OnOffOracleResult res = on_off_brute_force(inst);
        if (!res.feasible) {
            ++counterexamples;
            continue;
        }
        const OnOffStructure st = on_off_structure(inst, res.powers);
        if (!(st.prefix_in_ratio_order && st.interior_count <= 1 && st.interior_is_boundary_user))
            ++counterexamples;
    }
    r.passed = counterexamples == 0;
    r.detail = fmt("%zu counterexamples in 100 enumerated instances", counterexamples);
    return r;
}

CheckResult check_identity_moments(const ValidationConfig& cfg) {
    CheckResult r{"identity-moments", "E - V equals the squared population mean to 1e-12 relative",
                  true, ""};
    double worst = 0.0;
    rng::Generator gen(rng::derive_seed(31, rng::kOracle, 0));
    for (std::size_t trial = 0; trial < 50; ++trial) {
        const std::size_t m = 2 + static_cast<std::size_t>(gen.below(1500));
        FadingMap fm;
        fm.lambda_aw = 1.0;
        fm.lambda_mb.assign(m, 1.0);
        fm.lambda_mw.resize(m);
        for (auto& l : fm.lambda_mw) l = std::exp(gen.uniform(-30.0, -25.0));
        const CooperationStats st = cooperation_stats(fm, 0.1, 0.05, cfg.scenario.constants);
        const double mean = population_mean(fm.lambda_mw);
        const double rel = std::abs((st.e_moment - st.v_moment) - mean * mean) / (mean * mean);
        worst = std::max(worst, rel);
    }
    const FadingMap fm = fading_map(cfg.scenario);
    const CooperationStats st = cooperation_stats(fm, 0.05, 0.03, cfg.scenario.constants);
    const double mean = population_mean(fm.lambda_mw);
    worst = std::max(worst, std::abs((st.e_moment - st.v_moment) - mean * mean) / (mean * mean));
    r.passed = worst <= 1e-12;
    r.detail = fmt("worst relative identity error %.2e", worst);
    return r;
}

CheckResult check_identity_roundtrip(const ValidationConfig& cfg) {
    CheckResult r{"identity-roundtrip",
                  "power-of-count and count-of-power invert each other to 1e-6 relative", true, ""};
    double worst = 0.0;
    rng::Generator gen(rng::derive_seed(32, rng::kOracle, 0));
    const std::size_t m = 1000;
    for (std::size_t trial = 0; trial < 200; ++trial) {
        FadingMap fm;
        fm.lambda_aw = std::exp(gen.uniform(-31.0, -28.0));
        fm.lambda_mb.assign(m, 1.0);
        fm.lambda_mw.resize(m);
        for (auto& l : fm.lambda_mw) l = std::exp(gen.uniform(-32.0, -27.0));
        const double eps = gen.uniform(0.01, 0.3);
        const double k_bar = 1.0 + static_cast<double>(gen.below(m));
        const CooperationStats probe = cooperation_stats(fm, 1.0, eps, cfg.scenario.constants);
        const double p = pa_of_k(k_bar, probe.e_moment, probe.v_moment, fm.lambda_aw, eps,
                                 cfg.scenario.constants, m);
        if (!(p > 0.0)) continue;
        const KminResult back =
            k_min_exact(cooperation_stats(fm, p, eps, cfg.scenario.constants), m);
        worst = std::max(worst, std::abs(back.raw_root - k_bar) / k_bar);
    }
    r.passed = worst <= 1e-6;
    r.detail = fmt("worst relative round-trip error %.2e over 200 draws", worst);
    return r;
}

CheckResult check_identity_erfc(const ValidationConfig& cfg) {
    CheckResult r{"identity-erfc", "erfc tail approximation relative error < 1% for x >= 1", true,
                  ""};
    (void)cfg;
    double worst = 0.0, worst_x = 0.0;
    for (double x = 1.0; x <= 10.0; x += 0.25) {
        const double rel = std::abs(erfc_approx(x) - std::erfc(x)) / std::erfc(x);
        if (rel > worst) {
            worst = rel;
            worst_x = x;
        }
    }
    r.passed = worst < 0.01;
    r.detail = fmt("worst relative error %.2f%% at x=%.2f (drops below 1%% only for x >= 4.25)",
                   worst * 100.0, worst_x);
    return r;
}

using CheckFn = CheckResult (*)(const ValidationConfig&);

const std::pair<const char*, CheckFn> kChecks[] = {
    {"dep-supnorm", check_dep_supnorm},
    {"dep-zeta-min", check_dep_zeta_min},
    {"dep-argmin", check_dep_argmin},
    {"kmin-agreement", check_kmin_agreement},
    {"kmin-anchors", check_kmin_anchors},
    {"eps-slope", check_eps_slope},
    {"eps-anchors", check_eps_anchors},
    {"asym-gap", check_asym_gap},
    {"homog-reduction", check_homog_reduction},
    {"sensitivity-trends", check_sensitivity_trends},
    {"optimality", check_optimality},
    {"baseline", check_baseline},
    {"onoff-structure", check_onoff_structure},
    {"identity-moments", check_identity_moments},
    {"identity-roundtrip", check_identity_roundtrip},
    {"identity-erfc", check_identity_erfc},
};

}  // namespace

const std::vector<std::string>& validation_check_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> v;
        for (const auto& c : kChecks) v.emplace_back(c.first);
        return v;
    }();
    return ids;
}

CheckResult run_validation_check(const std::string& id, const ValidationConfig& cfg) {
    for (const auto& c : kChecks) {
        if (id == c.first) return c.second(cfg);
    }
    throw std::invalid_argument("unknown validation check: " + id);
}

std::vector<CheckResult> run_all_validation_checks(const ValidationConfig& cfg) {
    std::vector<CheckResult> out;
    out.reserve(std::size(kChecks));
    for (const auto& c : kChecks) out.push_back(c.second(cfg));
    return out;
}

}  // namespace covertnet
