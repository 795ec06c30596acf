#include "covertnet/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "covertnet/mathutil.hpp"
#include "covertnet/rng.hpp"

namespace covertnet {

namespace {

struct TrialWorkspace {
    std::vector<double> g_mb;
    std::vector<std::size_t> idx;
};

// One energy-detection trial: returns the test statistic under both
// hypotheses, sharing the same interference draw.
std::pair<double, double> run_trial(const FadingMap& fading, const RadioConstants& constants,
                                    double p_a, std::size_t k, SelectionMode mode,
                                    rng::Generator& gen, TrialWorkspace& ws) {
    const std::size_t m = fading.user_count();
    ws.idx.resize(m);
    std::iota(ws.idx.begin(), ws.idx.end(), std::size_t{0});

    if (mode == SelectionMode::kRatio) {
        ws.g_mb.resize(m);
        for (std::size_t i = 0; i < m; ++i) ws.g_mb[i] = gen.exponential(fading.lambda_mb[i]);
        if (k < m) {
            std::nth_element(ws.idx.begin(), ws.idx.begin() + static_cast<std::ptrdiff_t>(k - 1),
                             ws.idx.end(), [&](std::size_t a, std::size_t b) {
                                 const double ra = ws.g_mb[a] / fading.lambda_mw[a];
                                 const double rb = ws.g_mb[b] / fading.lambda_mw[b];
                                 if (ra != rb) return ra < rb;
                                 return a < b;
                             });
        }
    } else {
        // Partial Fisher-Yates: first k entries become a uniform subset.
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(gen.below(m - i));
            std::swap(ws.idx[i], ws.idx[j]);
        }
    }
    // Pin the draw-to-user pairing so results do not depend on the standard
    // library's partitioning order.
    std::sort(ws.idx.begin(), ws.idx.begin() + static_cast<std::ptrdiff_t>(k));

    const double p_max = constants.p_max_w();
    double interference = 0.0;
    for (std::size_t i = 0; i < k; ++i)
        interference += p_max * gen.exponential(fading.lambda_mw[ws.idx[i]]);
    const double t0 = interference + constants.sigma_w_sq();
    const double t1 = t0 + p_a * gen.exponential(fading.lambda_aw);
    return {t0, t1};
}

void run_trial_block(const FadingMap& fading, const RadioConstants& constants, double p_a,
                     std::size_t k, SelectionMode mode, std::uint64_t seed, std::size_t begin,
                     std::size_t end, std::vector<double>& t0, std::vector<double>& t1) {
    TrialWorkspace ws;
    for (std::size_t t = begin; t < end; ++t) {
        rng::Generator gen(rng::derive_seed(seed, rng::kRealization, t));
        std::tie(t0[t], t1[t]) = run_trial(fading, constants, p_a, k, mode, gen, ws);
    }
}

}  // namespace

DepCurve empirical_dep_curve(const FadingMap& fading, const RadioConstants& constants, double p_a,
                             std::size_t k, std::size_t trials, std::uint64_t seed,
                             SelectionMode mode, McOptions opts) {
    const std::size_t m = fading.user_count();
    if (k < 1 || k > m) throw std::domain_error("empirical_dep_curve: need 1 <= k <= M");
    if (trials < 1) throw std::domain_error("empirical_dep_curve: need trials >= 1");
    if (p_a < 0.0) throw std::domain_error("empirical_dep_curve: p_a must be >= 0");

    const DetectionParams params = detection_params(p_a, fading, k, constants);

    DepCurve curve;
    curve.trials = trials;
    curve.gamma_grid.resize(opts.grid_points);
    const double lo = params.sigma_w_sq;
    const double hi = params.xi + 8.0 * std::sqrt(params.sigma_big) + params.sigma_w_sq;
    for (std::size_t i = 0; i < opts.grid_points; ++i) {
        curve.gamma_grid[i] =
            lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(opts.grid_points - 1);
    }

    std::vector<double> t0(trials), t1(trials);
    const std::size_t nthreads = std::max<std::size_t>(1, opts.threads);
    if (nthreads == 1 || trials < 2 * nthreads) {
        run_trial_block(fading, constants, p_a, k, mode, seed, 0, trials, t0, t1);
    } else {
        std::vector<std::future<void>> tasks;
        const std::size_t chunk = (trials + nthreads - 1) / nthreads;
        for (std::size_t c = 0; c < trials; c += chunk) {
            const std::size_t e = std::min(trials, c + chunk);
            tasks.push_back(std::async(std::launch::async, [&, c, e] {
                run_trial_block(fading, constants, p_a, k, mode, seed, c, e, t0, t1);
            }));
        }
        for (auto& f : tasks) f.get();
    }

    std::sort(t0.begin(), t0.end());
    std::sort(t1.begin(), t1.end());
    curve.zeta_emp.resize(opts.grid_points);
    curve.zeta_cf.resize(opts.grid_points);
    const double n = static_cast<double>(trials);
    for (std::size_t i = 0; i < opts.grid_points; ++i) {
        const double g = curve.gamma_grid[i];
        const auto above = t0.end() - std::upper_bound(t0.begin(), t0.end(), g);
        const auto at_or_below = std::upper_bound(t1.begin(), t1.end(), g) - t1.begin();
        curve.zeta_emp[i] = static_cast<double>(above) / n + static_cast<double>(at_or_below) / n;
        curve.zeta_cf[i] = (p_a > 0.0) ? dep_closed_form(params, g).zeta : 1.0;
    }
    return curve;
}

namespace {

double min_zeta_emp(const FadingMap& fading, const RadioConstants& constants, double p_a,
                    std::size_t k, std::size_t trials, std::uint64_t seed, std::size_t grid_points,
                    std::size_t threads) {
    const DepCurve c = empirical_dep_curve(fading, constants, p_a, k, trials, seed,
                                           SelectionMode::kRatio, {grid_points, threads});
    return *std::min_element(c.zeta_emp.begin(), c.zeta_emp.end());
}

}  // namespace

EmpiricalKmin empirical_k_min(const FadingMap& fading, const RadioConstants& constants, double p_a,
                              double epsilon, std::uint64_t seed, KminSearchOptions opts) {
    const std::size_t m = fading.user_count();
    const double target = 1.0 - epsilon;
    std::uint64_t eval = 0;
    auto passes = [&](std::size_t k, std::size_t trials) {
        const std::uint64_t s = rng::derive_seed(seed, rng::kOracle, eval++);
        return min_zeta_emp(fading, constants, p_a, k, trials, s, opts.grid_points, opts.threads) >=
               target;
    };

    if (!passes(m, opts.search_trials)) {
        // Even the full population fails at search resolution; confirm once.
        if (!passes(m, opts.confirm_trials)) return {m, false};
    }
    std::size_t lo = 1, hi = m;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (passes(mid, opts.search_trials))
            hi = mid;
        else
            lo = mid + 1;
    }

    const std::size_t from = (lo > 2) ? lo - 2 : 1;
    for (std::size_t k = from; k <= m; ++k) {
        if (passes(k, opts.confirm_trials)) return {k, true};
    }
    return {m, false};
}

OnOffOracleResult on_off_brute_force(const OnOffOracleInstance& instance) {
    const std::size_t m = instance.lambda_mw.size();
    if (m == 0 || m > 8) throw std::domain_error("on_off_brute_force: need 1 <= m <= 8");
    if (instance.g_mb.size() != m)
        throw std::invalid_argument("on_off_brute_force: lambda_mw and g_mb sizes disagree");
    const std::size_t levels = instance.grid_levels;
    if (levels < 3) throw std::domain_error("on_off_brute_force: need grid_levels >= 3");

    std::vector<double> level_value(levels);
    for (std::size_t i = 0; i < levels; ++i)
        level_value[i] =
            instance.p_max * static_cast<double>(i) / static_cast<double>(levels - 1);

    double full = 0.0;
    for (double l : instance.lambda_mw) full += l * instance.p_max;
    const double tol = 1e-12 * std::max(full, std::abs(instance.delta_target));

    std::vector<std::size_t> digits(m, 0);
    OnOffOracleResult best;
    best.feasible = false;
    while (true) {
        double psi = 0.0, obj = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double p = level_value[digits[i]];
            psi += instance.lambda_mw[i] * p;
            obj += instance.g_mb[i] * p;
        }
        if (psi >= instance.delta_target - tol && (!best.feasible || obj < best.objective)) {
            best.feasible = true;
            best.objective = obj;
            best.powers.resize(m);
            for (std::size_t i = 0; i < m; ++i) best.powers[i] = level_value[digits[i]];
        }
        std::size_t pos = 0;
        while (pos < m && ++digits[pos] == levels) digits[pos++] = 0;
        if (pos == m) break;
    }
    return best;
}

double surrogate_interference_level(double p_a, double lambda_aw, double epsilon, std::size_t m) {
    // Inverting the minimum-DEP expression: zeta_min >= 1 - eps is equivalent
    // to sigma / (2 delta^2) >= ((1 - 4 eps^2) / (2 eps sqrt(pi)))^2, and with
    // sigma ~ psi^2 / M the bound becomes psi >= delta sqrt(M c_eps).
    const double delta = p_a * lambda_aw;
    return delta * std::sqrt(static_cast<double>(m) * c_epsilon(epsilon));
}

OnOffStructure on_off_structure(const OnOffOracleInstance& instance,
                                const std::vector<double>& powers) {
    const std::size_t m = instance.lambda_mw.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double ra = instance.g_mb[a] / instance.lambda_mw[a];
        const double rb = instance.g_mb[b] / instance.lambda_mw[b];
        if (ra != rb) return ra < rb;
        return a < b;
    });

    OnOffStructure st;
    std::size_t active = 0;
    for (double p : powers) {
        if (p > 0.0) ++active;
        if (p > 0.0 && p < instance.p_max) ++st.interior_count;
    }
    st.prefix_in_ratio_order = true;
    for (std::size_t i = 0; i < m; ++i) {
        const bool should_be_active = i < active;
        if ((powers[order[i]] > 0.0) != should_be_active) st.prefix_in_ratio_order = false;
    }
    if (st.interior_count >= 1 && active >= 1) {
        // A fractional coordinate is only consistent with the threshold shape
        // on the last active (boundary) user.
        const double p_last = powers[order[active - 1]];
        st.interior_is_boundary_user =
            st.interior_count == 1 && p_last > 0.0 && p_last < instance.p_max;
    }
    return st;
}

std::vector<Vec2> ring_users(const Vec2& willie, double mu_d, double sigma_d, std::size_t count,
                             std::uint64_t seed) {
    const double half_width = std::sqrt(3.0) * sigma_d;
    if (!(mu_d - half_width > 0.0))
        throw std::domain_error("ring_users: distance range must stay positive");
    rng::Generator gen(rng::derive_seed(seed, rng::kScenarioFamily, 0));
    std::vector<Vec2> users;
    users.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double r = mu_d + (2.0 * gen.uniform01() - 1.0) * half_width;
        const double theta = 2.0 * kPi * gen.uniform01();
        users.push_back({willie.x + r * std::cos(theta), willie.y + r * std::sin(theta)});
    }
    return users;
}

std::vector<SensitivityRow> sensitivity_sweep(SweepParam param, const std::vector<double>& values,
                                              const std::vector<std::uint64_t>& seeds,
                                              const SensitivityConfig& cfg,
                                              const RadioConstants& constants) {
    std::vector<SensitivityRow> rows;
    rows.reserve(values.size() * seeds.size());
    for (double value : values) {
        const double mu = (param == SweepParam::kMuD) ? value : cfg.mu_fixed;
        const double sigma = (param == SweepParam::kSigmaD) ? value : cfg.sigma_fixed;
        for (std::uint64_t seed : seeds) {
            Scenario sc;
            sc.alice = cfg.alice;
            sc.bob = cfg.bob;
            sc.willie = cfg.willie;
            sc.constants = constants;
            sc.seed = seed;
            sc.users = ring_users(cfg.willie, mu, sigma, cfg.user_count, seed);
            sc.validate();
            const FadingMap fm = fading_map(sc);
            const CooperationStats st = cooperation_stats(fm, cfg.p_a, cfg.epsilon, constants);

            double sum = 0.0;
            for (double l : fm.lambda_mw) sum += l;
            const double lambda_bar = sum / static_cast<double>(fm.user_count());

            SensitivityRow row;
            row.param = param;
            row.value = value;
            row.seed = seed;
            row.exact = k_min_exact(st, cfg.user_count);
            row.asym = k_min_asymptotic(st, cfg.user_count);
            row.homog = k_min_homogeneous(cfg.p_a, fm.lambda_aw, lambda_bar, cfg.epsilon, constants,
                                          cfg.user_count);
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace covertnet
