#include "covertnet/cooperation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "covertnet/mathutil.hpp"

namespace covertnet {

double c_epsilon(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 0.5))
        throw std::domain_error("c_epsilon: epsilon must lie in (0, 0.5)");
    return (1.0 / (epsilon * epsilon) - 8.0 + 16.0 * epsilon * epsilon) / (2.0 * kPi);
}

CooperationStats cooperation_stats(const FadingMap& fading, double p_a, double epsilon,
                                   const RadioConstants& constants) {
    if (!(p_a > 0.0)) throw std::domain_error("cooperation_stats: p_a must be > 0");
    const std::size_t m = fading.user_count();
    if (m == 0) throw std::domain_error("cooperation_stats: empty population");

    CooperationStats st;
    st.epsilon = epsilon;
    st.p_a = p_a;
    st.lambda_aw = fading.lambda_aw;
    st.c_eps = c_epsilon(epsilon);

    double sum = 0.0;
    for (double l : fading.lambda_mw) sum += l;
    const double mean = sum / static_cast<double>(m);
    double sum_sq = 0.0, sum_var = 0.0;
    for (double l : fading.lambda_mw) {
        sum_sq += l * l;
        const double d = l - mean;
        sum_var += d * d;
    }
    st.e_moment = sum_sq / static_cast<double>(m);
    st.v_moment = sum_var / static_cast<double>(m);

    const double p_max = constants.p_max_w();
    st.c_const = p_max * p_max / (p_a * p_a * st.lambda_aw * st.lambda_aw * st.c_eps);
    return st;
}

std::size_t ceil_with_slack(double x) {
    if (!(x > 0.0)) return 0;
    const double c = std::ceil(x - std::abs(x) * 1e-9);
    return static_cast<std::size_t>(c);
}

KminResult k_min_exact(const CooperationStats& stats, std::size_t m) {
    if (m < 1) throw std::domain_error("k_min_exact: m must be >= 1");
    KminResult r;
    const double ev = stats.e_moment + stats.v_moment;
    const double md = static_cast<double>(m);
    const double disc_arg = 4.0 * stats.v_moment / (stats.c_const * md * ev * ev);
    if (disc_arg > 1.0) {
        // No real root: the covert equality cannot be met by any K.
        r.raw_root = std::numeric_limits<double>::quiet_NaN();
        r.k_min = 0;
        r.feasible = false;
        return r;
    }
    // Conjugate form of (M(E+V)/2V)(1 - sqrt(1 - disc_arg)); no 0/0 at V = 0.
    r.raw_root = 2.0 / (stats.c_const * ev * (1.0 + std::sqrt(1.0 - disc_arg)));
    r.k_min = ceil_with_slack(r.raw_root);
    r.feasible = r.k_min <= m;
    return r;
}

KminResult k_min_asymptotic(const CooperationStats& stats, std::size_t m) {
    KminResult r;
    r.raw_root = 1.0 / (stats.c_const * (stats.e_moment + stats.v_moment));
    r.k_min = ceil_with_slack(r.raw_root);
    r.feasible = r.k_min <= m;
    return r;
}

KminResult k_min_homogeneous(double p_a, double lambda_aw, double lambda_bar, double epsilon,
                             const RadioConstants& constants, std::size_t m) {
    if (!(lambda_bar > 0.0)) throw std::domain_error("k_min_homogeneous: lambda_bar must be > 0");
    const double p_max = constants.p_max_w();
    const double ratio = lambda_aw / lambda_bar;
    KminResult r;
    r.raw_root = p_a * p_a * c_epsilon(epsilon) / (p_max * p_max) * ratio * ratio;
    r.k_min = ceil_with_slack(r.raw_root);
    r.feasible = r.k_min <= m;
    return r;
}

double pa_of_k(double k_bar, double e_moment, double v_moment, double lambda_aw, double epsilon,
               const RadioConstants& constants, std::size_t m) {
    if (k_bar < 0.0 || k_bar > static_cast<double>(m))
        throw std::domain_error("pa_of_k: k_bar must lie in [0, M]");
    const double radicand = (e_moment + v_moment) * k_bar - v_moment / static_cast<double>(m) * k_bar * k_bar;
    if (radicand < 0.0) throw std::domain_error("pa_of_k: negative radicand");
    const double p_max = constants.p_max_w();
    return p_max / (std::sqrt(c_epsilon(epsilon)) * lambda_aw) * std::sqrt(radicand);
}

double activation_threshold(const SelectionOrder& order, std::size_t k_min) {
    const std::size_t m = order.order.size();
    if (k_min == 0) return -1.0;
    if (k_min > m) throw std::domain_error("activation_threshold: k_min exceeds user count");
    return order.ratios[order.order[k_min - 1]];
}

}  // namespace covertnet
