#include "covertnet/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace covertnet {

PowerProfile on_off_profile(const SelectionOrder& order, double tau, double p_a,
                            const RadioConstants& constants) {
    const double p_max = constants.p_max_w();
    if (p_a < 0.0 || p_a > p_max)
        throw std::domain_error("on_off_profile: p_a must lie in [0, P_max]");
    PowerProfile pp;
    pp.p_a = p_a;
    pp.tau = tau;
    pp.p_users.assign(order.ratios.size(), 0.0);
    for (std::size_t i = 0; i < order.ratios.size(); ++i) {
        if (order.ratios[i] <= tau) {
            pp.p_users[i] = p_max;
            ++pp.k;
        }
    }
    return pp;
}

double achievable_rate(const PowerProfile& profile, const ChannelRealization& realization,
                       const RadioConstants& constants) {
    if (profile.p_users.size() != realization.user_count())
        throw std::invalid_argument("achievable_rate: profile and realization sizes disagree");
    double interference = 0.0;
    for (std::size_t i = 0; i < profile.p_users.size(); ++i)
        interference += profile.p_users[i] * realization.g_mb[i];
    const double snr = profile.p_a * realization.g_ab / (interference + constants.sigma_b_sq());
    return std::log2(1.0 + snr);
}

namespace {

// Shared sweep skeleton. powers[k] is the cell's transmit power, valid[k] its
// covert reachability; interference prefix sums follow `order`.
OptimizationResult sweep(const std::vector<std::size_t>& order,
                         const std::vector<double>& ratios_for_tau,
                         const ChannelRealization& realization, const RadioConstants& constants,
                         const std::vector<double>& powers, const std::vector<bool>& valid,
                         bool any_feasible) {
    const std::size_t m = order.size();
    const double sigma_b = constants.sigma_b_sq();
    const double p_max = constants.p_max_w();

    OptimizationResult res;
    res.trace.reserve(m + 1);
    double interference = 0.0;
    double best = -1.0;
    std::size_t best_k = 0;
    for (std::size_t k = 0; k <= m; ++k) {
        if (k > 0) interference += p_max * realization.g_mb[order[k - 1]];
        SearchCell cell;
        cell.k_bar = k;
        cell.p_a = powers[k];
        cell.valid = valid[k];
        cell.rate = (k == 0 && powers[k] == 0.0)
                        ? 0.0
                        : std::log2(1.0 + powers[k] * realization.g_ab / (interference + sigma_b));
        res.trace.push_back(cell);
        if (cell.valid && k >= 1 && cell.rate > best) {
            best = cell.rate;
            best_k = k;
        }
    }

    res.feasible = any_feasible && best > 0.0;
    if (res.feasible) {
        res.k_star = best_k;
        res.p_a_star = powers[best_k];
        res.rate_star = best;
        res.tau_star = ratios_for_tau[order[best_k - 1]];
    }
    return res;
}

}  // namespace

OptimizationResult piecewise_search(const ChannelRealization& realization, const FadingMap& fading,
                                    double epsilon, const RadioConstants& constants) {
    const std::size_t m = fading.user_count();
    const double p_max = constants.p_max_w();
    const SelectionOrder so = selection_order(realization, fading);
    const CooperationStats at_pmax = cooperation_stats(fading, p_max, epsilon, constants);
    const KminResult need_at_pmax = k_min_exact(at_pmax, m);

    std::vector<double> powers(m + 1, 0.0);
    std::vector<bool> valid(m + 1, false);
    valid[0] = true;  // silence
    for (std::size_t k = 1; k <= m; ++k) {
        const double p = pa_of_k(static_cast<double>(k), at_pmax.e_moment, at_pmax.v_moment,
                                 fading.lambda_aw, epsilon, constants, m);
        if (p >= p_max) {
            powers[k] = p_max;
            valid[k] = need_at_pmax.feasible && need_at_pmax.k_min <= k;
        } else {
            powers[k] = p;
            valid[k] = true;
        }
    }
    return sweep(so.order, so.ratios, realization, constants, powers, valid, true);
}

OptimizationResult baseline_policy(const ChannelRealization& realization, const FadingMap& fading,
                                   double epsilon, const RadioConstants& constants) {
    const std::size_t m = fading.user_count();
    const double p_max = constants.p_max_w();

    // Sort by the Bob-side gain alone.
    SelectionOrder bob_order;
    bob_order.ratios = realization.g_mb;
    bob_order.order.resize(m);
    for (std::size_t i = 0; i < m; ++i) bob_order.order[i] = i;
    std::sort(bob_order.order.begin(), bob_order.order.end(), [&](std::size_t a, std::size_t b) {
        if (realization.g_mb[a] != realization.g_mb[b]) return realization.g_mb[a] < realization.g_mb[b];
        return a < b;
    });

    double sum = 0.0;
    for (double l : fading.lambda_mw) sum += l;
    const double lambda_bar = sum / static_cast<double>(m);
    const KminResult need = k_min_homogeneous(p_max, fading.lambda_aw, lambda_bar, epsilon, constants, m);

    std::vector<double> powers(m + 1, p_max);
    powers[0] = 0.0;
    std::vector<bool> valid(m + 1, false);
    valid[0] = true;
    for (std::size_t k = 1; k <= m; ++k) valid[k] = need.feasible && need.k_min <= k;
    return sweep(bob_order.order, bob_order.ratios, realization, constants, powers, valid,
                 need.feasible);
}

}  // namespace covertnet
