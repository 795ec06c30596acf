#include "covertnet/mathutil.hpp"

#include <cmath>

namespace covertnet {

namespace {

// Asymptotic series 1/(x sqrt(pi)) * sum_k (-1)^k (2k-1)!! / (2x^2)^k.
// Converges to full double precision for x >= 6 with a handful of terms.
double erfcx_asymptotic(double x) {
    const double inv2x2 = 1.0 / (2.0 * x * x);
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k <= 12; ++k) {
        term *= -(2 * k - 1) * inv2x2;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum / (x * std::sqrt(kPi));
}

}  // namespace

double erfcx(double x) {
    if (x < 0.0) {
        // erfcx(-x) = 2 exp(x^2) - erfcx(x); overflows for x < -26.6, which the
        // callers never pair with a compensating factor, so let it saturate.
        return 2.0 * std::exp(x * x) - erfcx(-x);
    }
    if (x < 6.0) return std::exp(x * x) * std::erfc(x);
    return erfcx_asymptotic(x);
}

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

}  // namespace covertnet
