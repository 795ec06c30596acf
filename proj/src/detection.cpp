#include "covertnet/detection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "covertnet/mathutil.hpp"

namespace covertnet {

DetectionParams detection_params(double p_a, const FadingMap& fading, std::size_t k,
                                 const RadioConstants& constants) {
    const std::size_t m = fading.user_count();
    if (p_a < 0.0) throw std::domain_error("detection_params: p_a must be >= 0");
    if (k > m) throw std::domain_error("detection_params: k exceeds user count");
    if (k >= 1 && m < 2)
        throw std::domain_error("detection_params: selection variance needs M >= 2 when k >= 1");

    DetectionParams dp;
    dp.k = k;
    dp.m = m;
    dp.sigma_w_sq = constants.sigma_w_sq();
    dp.delta = p_a * fading.lambda_aw;

    double sum = 0.0;
    for (double l : fading.lambda_mw) sum += l;
    const double mean = sum / static_cast<double>(m);
    double sum_sq = 0.0, sum_var = 0.0;
    for (double l : fading.lambda_mw) {
        sum_sq += l * l;
        const double d = l - mean;
        sum_var += d * d;
    }
    const double e2 = sum_sq / static_cast<double>(m);   // mean of lambda^2
    const double var = sum_var / static_cast<double>(m); // population variance

    const double p_max = constants.p_max_w();
    const double kd = static_cast<double>(k);
    const double md = static_cast<double>(m);
    dp.xi = kd * p_max / md * sum;
    const double fpc = (k >= 1) ? kd * (md - kd) / (md - 1.0) : 0.0;
    dp.sigma_big = p_max * p_max * (kd * e2 + fpc * var);
    return dp;
}

DepPoint dep_closed_form(const DetectionParams& params, double gamma) {
    if (!(params.delta > 0.0))
        throw std::domain_error("dep_closed_form: delta = 0 degenerates the model (no covert signal)");
    if (!(params.sigma_big > 0.0))
        throw std::domain_error("dep_closed_form: sigma_big = 0 degenerates the model (no interference)");

    const double gamma_hat = gamma - params.sigma_w_sq;
    const double sigma_rt = std::sqrt(params.sigma_big);
    const double u = (gamma_hat - params.xi) / sigma_rt;   // standardized threshold
    const double s = sigma_rt / params.delta;              // interference-to-signal spread

    // zeta = 1 - exp(a) Q(b) with a = s^2/2 - u s, b = s - u. The product is
    // evaluated through erfcx so neither factor overflows:
    //   exp(a) Q(b) = 1/2 exp(-u^2/2) erfcx((s-u)/sqrt(2)).
    const double t = (s - u) / std::sqrt(2.0);
    double tail;
    if (t >= 0.0) {
        tail = 0.5 * std::exp(-0.5 * u * u) * erfcx(t);
    } else {
        // erfcx(t) = 2 exp(t^2) - erfcx(-t); recombine so every exponent is <= 0.
        tail = std::exp(0.5 * s * s - u * s) - 0.5 * std::exp(-0.5 * u * u) * erfcx(-t);
    }

    DepPoint pt;
    pt.gamma = gamma;
    pt.zeta = 1.0 - tail;
    pt.p_fa = q_function(u);
    pt.p_md = std::clamp(pt.zeta - pt.p_fa, 0.0, 1.0);
    return pt;
}

double optimal_gamma(const DetectionParams& params) { return params.xi + params.sigma_w_sq; }

MinDepResult min_dep(const DetectionParams& params) {
    MinDepResult r;
    if (!(params.delta > 0.0)) {
        // No covert signal: the hypotheses coincide and zeta = 1 identically.
        r.zeta_min = 1.0;
        r.degenerate = true;
        return r;
    }
    const double s2d = params.sigma_big / (2.0 * params.delta * params.delta);
    r.zeta_min = 1.0 - 1.0 / (std::sqrt(kPi) * (std::sqrt(s2d) + std::sqrt(s2d + 4.0 / kPi)));
    // With k = 0 the formula collapses to 1/2 although a real detector would be
    // error-free; flag instead of patching.
    r.degenerate = !(params.sigma_big > 0.0);
    return r;
}

double erfc_approx(double x) {
    if (x < 0.0) throw std::domain_error("erfc_approx: defined for x >= 0");
    return 2.0 / std::sqrt(kPi) * std::exp(-x * x) / (x + std::sqrt(x * x + 4.0 / kPi));
}

double dep_exponent_approx(const DetectionParams& params, double gamma, double c_q) {
    if (!(params.sigma_big > 0.0))
        throw std::domain_error("dep_exponent_approx: sigma_big must be > 0");
    const double gamma_hat = gamma - params.sigma_w_sq;
    const double d = gamma_hat - params.xi;
    return 1.0 - c_q * std::exp(-d * d / (2.0 * params.sigma_big));
}

std::vector<double> default_gamma_grid(const DetectionParams& params, std::size_t points) {
    if (points < 2) throw std::invalid_argument("default_gamma_grid: need at least 2 points");
    const double lo = params.sigma_w_sq;
    const double hi = params.xi + 6.0 * std::sqrt(params.sigma_big) + params.sigma_w_sq;
    std::vector<double> grid(points);
    for (std::size_t i = 0; i < points; ++i) {
        grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    return grid;
}

}  // namespace covertnet
