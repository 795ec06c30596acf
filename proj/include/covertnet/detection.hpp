#pragma once

#include <cstddef>
#include <vector>

#include "covertnet/scenario.hpp"

namespace covertnet {

// Parameters of Willie's test-statistic distribution under random cooperator
// selection: delta is the mean of Alice's exponential component, xi the mean
// aggregate interference, sigma_big its variance (expected conditional
// variance plus the selection variance with finite-population correction).
struct DetectionParams {
    double delta = 0.0;       // W
    double xi = 0.0;          // W
    double sigma_big = 0.0;   // W^2
    std::size_t k = 0;
    std::size_t m = 0;
    double sigma_w_sq = 0.0;  // W
};

// Requires 0 <= k <= M and (M >= 2 whenever k >= 1); the selection-variance
// term divides by M-1.
DetectionParams detection_params(double p_a, const FadingMap& fading, std::size_t k,
                                 const RadioConstants& constants);

struct DepPoint {
    double gamma = 0.0;
    double p_fa = 0.0;
    double p_md = 0.0;
    double zeta = 0.0;  // p_fa + p_md
};

// Closed-form detection error probability at threshold gamma.
// Throws std::domain_error when delta == 0 or sigma_big == 0 (the
// exponential-plus-Gaussian model degenerates there).
DepPoint dep_closed_form(const DetectionParams& params, double gamma);

// Threshold minimizing the DEP: xi + sigma_w^2.
double optimal_gamma(const DetectionParams& params);

struct MinDepResult {
    double zeta_min = 0.0;
    // Set when the Gaussian-interference model does not apply (k = 0 or
    // p_a = 0); the value is then a documented convention, not a prediction.
    bool degenerate = false;
};

// Minimum DEP via the erfc tail approximation; exact argmin value is
// dep_closed_form at optimal_gamma.
MinDepResult min_dep(const DetectionParams& params);

// erfc(x) ~ 2/sqrt(pi) * exp(-x^2) / (x + sqrt(x^2 + 4/pi)), x >= 0.
// Only used to validate the min_dep derivation; production paths evaluate the
// error function at machine precision.
double erfc_approx(double x);

// DEP with the Q-function replaced by c_q * exp(-x^2/2); its exponent is an
// exact quadratic in gamma, which is what makes optimal_gamma the argmin.
double dep_exponent_approx(const DetectionParams& params, double gamma, double c_q = 0.5);

// Default evaluation grid [sigma_w^2, xi + 6 sqrt(sigma_big) + sigma_w^2].
std::vector<double> default_gamma_grid(const DetectionParams& params, std::size_t points = 2000);

}  // namespace covertnet
