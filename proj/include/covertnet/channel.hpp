#pragma once

#include <cstdint>
#include <vector>

#include "covertnet/scenario.hpp"

namespace covertnet {

// One draw of instantaneous channel power gains |h|^2 on the covert band.
// Rayleigh amplitudes make each |h|^2 exponential with mean lambda.
struct ChannelRealization {
    double g_ab = 0.0;
    double g_aw = 0.0;
    std::vector<double> g_mb;
    std::vector<double> g_mw;

    std::size_t user_count() const { return g_mb.size(); }
};

// Draw order is fixed (g_ab, g_aw, g_mb[0..M), g_mw[0..M)) so a seed pins the
// whole realization.
ChannelRealization draw_realization(const FadingMap& fading, std::uint64_t seed);

// Users sorted ascending by g_mb / lambda_mw, ties broken by ascending index.
struct SelectionOrder {
    std::vector<double> ratios;        // per-user, original indexing
    std::vector<std::size_t> order;    // permutation, ascending ratio
};

SelectionOrder selection_order(const ChannelRealization& realization, const FadingMap& fading);

}  // namespace covertnet
