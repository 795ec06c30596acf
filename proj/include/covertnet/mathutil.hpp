#pragma once

namespace covertnet {

// Scaled complementary error function exp(x^2) * erfc(x).
// Needed because the detection-error expressions pair huge exp() factors with
// vanishing erfc() tails; the product is O(1) but neither factor is.
double erfcx(double x);

// Gaussian tail probability Q(x) = P(N(0,1) > x).
double q_function(double x);

inline constexpr double kPi = 3.141592653589793238462643383279502884;

}  // namespace covertnet
