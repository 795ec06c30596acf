#pragma once

#include <cstdint>
#include <vector>

#include "covertnet/cooperation.hpp"
#include "covertnet/detection.hpp"
#include "covertnet/scenario.hpp"

namespace covertnet {

// How the cooperator set is formed in simulated trials. `kRatio` is the real
// on-off policy (k lowest g_mb / lambda_mw); `kUniform` matches the random-
// selection model behind the closed forms, kept so the gap between the two is
// measurable.
enum class SelectionMode { kRatio, kUniform };

struct DepCurve {
    std::vector<double> gamma_grid;
    std::vector<double> zeta_emp;
    std::vector<double> zeta_cf;
    std::size_t trials = 0;
};

struct McOptions {
    std::size_t grid_points = 512;
    std::size_t threads = 1;
};

// Simulated energy detection. Per trial: Bob-side gains are drawn and fix the
// selection, Willie-side gains are drawn independently, and both hypotheses
// share the interference draw (paired sampling). The grid spans
// [sigma_w^2, xi + 8 sqrt(sigma_big) + sigma_w^2].
DepCurve empirical_dep_curve(const FadingMap& fading, const RadioConstants& constants, double p_a,
                             std::size_t k, std::size_t trials, std::uint64_t seed,
                             SelectionMode mode = SelectionMode::kRatio, McOptions opts = {});

struct EmpiricalKmin {
    std::size_t k_min = 0;
    bool feasible = false;
};

struct KminSearchOptions {
    std::size_t search_trials = 2000;    // per k during the bisection
    std::size_t confirm_trials = 10000;  // final +/-2 neighborhood pass
    std::size_t grid_points = 512;
    std::size_t threads = 1;
};

// Smallest k whose simulated minimum DEP reaches 1 - epsilon; bisection plus a
// linear confirmation of the +/-2 neighborhood. Infeasible when k = M fails.
EmpiricalKmin empirical_k_min(const FadingMap& fading, const RadioConstants& constants, double p_a,
                              double epsilon, std::uint64_t seed, KminSearchOptions opts = {});

// Small instance of the interference-minimization problem
//   min sum_m p_m g_mb  s.t.  sum_m lambda_mw p_m >= delta, 0 <= p_m <= p_max
// solved by exhaustive enumeration over a per-user power grid.
struct OnOffOracleInstance {
    std::vector<double> lambda_mw;
    std::vector<double> g_mb;
    double delta_target = 0.0;
    std::size_t grid_levels = 6;  // includes 0 and p_max
    double p_max = 0.0;
};

struct OnOffOracleResult {
    bool feasible = false;
    std::vector<double> powers;
    double objective = 0.0;
};

OnOffOracleResult on_off_brute_force(const OnOffOracleInstance& instance);

// Minimum aggregate mean interference sum_m lambda_mw p_m that holds the
// minimum DEP at 1 - epsilon, for large populations where the interference
// variance concentrates at (sum lambda p)^2 / M. Ties an oracle instance's
// constraint level to a physical covertness tolerance.
double surrogate_interference_level(double p_a, double lambda_aw, double epsilon, std::size_t m);

struct OnOffStructure {
    bool prefix_in_ratio_order = false;  // active set is a lowest-ratio prefix
    std::size_t interior_count = 0;      // coordinates strictly inside (0, p_max)
    bool interior_is_boundary_user = true;
};

// Structural check of an enumerated minimizer against the on-off shape.
OnOffStructure on_off_structure(const OnOffOracleInstance& instance,
                                const std::vector<double>& powers);

// Controlled-geometry family: user distances to Willie uniform in
// [mu_d - sqrt(3) sigma_d, mu_d + sqrt(3) sigma_d] (exact mean and spread),
// angles uniform.
std::vector<Vec2> ring_users(const Vec2& willie, double mu_d, double sigma_d, std::size_t count,
                             std::uint64_t seed);

enum class SweepParam { kSigmaD, kMuD };

struct SensitivityRow {
    SweepParam param;
    double value = 0.0;
    std::uint64_t seed = 0;
    KminResult exact, asym, homog;
};

struct SensitivityConfig {
    Vec2 alice{831.0, 831.0};
    Vec2 bob{100.0, 100.0};
    Vec2 willie{500.0, 500.0};
    std::size_t user_count = 1000;
    double mu_fixed = 650.0;     // used when sweeping sigma_d
    double sigma_fixed = 50.0;   // used when sweeping mu_d
    double p_a = 0.1;            // W
    double epsilon = 0.03;
};

std::vector<SensitivityRow> sensitivity_sweep(SweepParam param, const std::vector<double>& values,
                                              const std::vector<std::uint64_t>& seeds,
                                              const SensitivityConfig& cfg,
                                              const RadioConstants& constants);

}  // namespace covertnet
