#pragma once

#include <vector>

#include "covertnet/scenario.hpp"

namespace covertnet::testing {

inline RadioConstants urban_constants() {
    return RadioConstants{-34.5, 3.5, 200.0, -102.0, -102.0};
}

// p_max = 1 W and unit-scale coefficients, handy for hand-computable cases.
inline RadioConstants unit_constants() {
    return RadioConstants{0.0, 2.0, 1000.0, 0.0, 0.0};
}

inline FadingMap flat_map(std::size_t m, double lambda_mb, double lambda_mw, double lambda_ab = 1.0,
                          double lambda_aw = 1.0) {
    FadingMap fm;
    fm.lambda_ab = lambda_ab;
    fm.lambda_aw = lambda_aw;
    fm.lambda_mb.assign(m, lambda_mb);
    fm.lambda_mw.assign(m, lambda_mw);
    return fm;
}

}  // namespace covertnet::testing
