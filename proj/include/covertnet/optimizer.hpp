#pragma once

#include <cstddef>
#include <vector>

#include "covertnet/channel.hpp"
#include "covertnet/cooperation.hpp"
#include "covertnet/scenario.hpp"

namespace covertnet {

// On-off interference profile: user m transmits at P_max iff its ratio is at
// or below tau, otherwise stays silent.
struct PowerProfile {
    double p_a = 0.0;              // W
    std::vector<double> p_users;   // each 0 or P_max (W)
    double tau = -1.0;             // activation threshold (ratio units)
    std::size_t k = 0;             // active-user count
};

PowerProfile on_off_profile(const SelectionOrder& order, double tau, double p_a,
                            const RadioConstants& constants);

// log2(1 + P_a g_ab / (sum_active P_max g_mb + sigma_b^2)), bits per channel use.
double achievable_rate(const PowerProfile& profile, const ChannelRealization& realization,
                       const RadioConstants& constants);

struct SearchCell {
    std::size_t k_bar = 0;
    double p_a = 0.0;     // W, after clamping to P_max
    double rate = 0.0;
    bool valid = false;   // covert constraint reachable in this cell
};

struct OptimizationResult {
    double p_a_star = 0.0;       // W
    std::size_t k_star = 0;
    double tau_star = -1.0;
    double rate_star = 0.0;
    // True when some cell with K >= 1 (hence strictly positive rate) satisfies
    // the covert constraint; silence (K = 0, P_a = 0) is always available but
    // does not count as feasible.
    bool feasible = false;
    std::vector<SearchCell> trace;  // one cell per K in 0..M
};

// Sweeps the cooperator count K = 0..M; each cell transmits at the largest
// power whose exact cooperator requirement equals K (clamped to P_max, in
// which case the cell is valid only if K covers the requirement at P_max),
// activates the K lowest-ratio users, and keeps the best rate. Ties prefer
// the smaller K.
OptimizationResult piecewise_search(const ChannelRealization& realization, const FadingMap& fading,
                                    double epsilon, const RadioConstants& constants);

// Reference policy for comparison: cooperators chosen by the Bob-side gain
// alone, the cooperator requirement taken from the homogeneous reduction with
// the population-mean coefficient, and Alice pinned at P_max (this policy
// tightens covertness by enlisting more users, not by backing off power).
// Infeasible when the requirement at P_max exceeds M.
OptimizationResult baseline_policy(const ChannelRealization& realization, const FadingMap& fading,
                                   double epsilon, const RadioConstants& constants);

}  // namespace covertnet
