#pragma once

#include <cstddef>

#include "covertnet/channel.hpp"
#include "covertnet/scenario.hpp"

namespace covertnet {

// (1/eps^2 - 8 + 16 eps^2) / (2 pi); positive exactly on eps in (0, 0.5),
// which is the domain where the covert equality is invertible.
double c_epsilon(double epsilon);

// Empirical moments of the user-to-Willie coefficients plus the constants that
// size the cooperator count. Moments use 1/M normalization.
struct CooperationStats {
    double e_moment = 0.0;   // mean of lambda_mw^2
    double v_moment = 0.0;   // population variance of lambda_mw
    double c_eps = 0.0;
    double c_const = 0.0;    // P_max^2 / (p_a^2 lambda_aw^2 c_eps)
    double lambda_aw = 0.0;
    double p_a = 0.0;        // W
    double epsilon = 0.0;
};

CooperationStats cooperation_stats(const FadingMap& fading, double p_a, double epsilon,
                                   const RadioConstants& constants);

struct KminResult {
    std::size_t k_min = 0;
    bool feasible = false;
    double raw_root = 0.0;  // pre-ceiling real root; NaN when no real root exists
};

// Ceiling with 1e-9 relative slack to absorb floating-point dust at integer
// boundaries; negative inputs clamp to 0.
std::size_t ceil_with_slack(double x);

// Smallest K with C K (E + V - K V / M) = 1, evaluated in the cancellation-free
// conjugate form (the V -> 0 limit 1/(C E) falls out of it directly).
// Infeasible when no real root exists or the root exceeds M.
KminResult k_min_exact(const CooperationStats& stats, std::size_t m);

// First-order form 1 / (C (E + V)); valid for M >> 1.
KminResult k_min_asymptotic(const CooperationStats& stats, std::size_t m);

// Homogeneous-population reduction (p_a^2 c_eps / P_max^2) (lambda_aw / lambda_bar)^2.
KminResult k_min_homogeneous(double p_a, double lambda_aw, double lambda_bar, double epsilon,
                             const RadioConstants& constants, std::size_t m);

// Largest Alice power whose exact cooperator requirement equals k_bar
// (inverse of k_min_exact on the same quadratic); not clamped to P_max.
double pa_of_k(double k_bar, double e_moment, double v_moment, double lambda_aw, double epsilon,
               const RadioConstants& constants, std::size_t m);

// Ratio of the k_min-th user in ascending order; activating every user at or
// below it switches on exactly k_min users when ratios are distinct.
// k_min = 0 returns -1, strictly below any ratio.
double activation_threshold(const SelectionOrder& order, std::size_t k_min);

}  // namespace covertnet
