#include "covertnet/channel.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "covertnet/rng.hpp"

namespace covertnet {

ChannelRealization draw_realization(const FadingMap& fading, std::uint64_t seed) {
    rng::Generator gen(seed);
    ChannelRealization cr;
    cr.g_ab = gen.exponential(fading.lambda_ab);
    cr.g_aw = gen.exponential(fading.lambda_aw);
    const std::size_t m = fading.user_count();
    cr.g_mb.resize(m);
    cr.g_mw.resize(m);
    for (std::size_t i = 0; i < m; ++i) cr.g_mb[i] = gen.exponential(fading.lambda_mb[i]);
    for (std::size_t i = 0; i < m; ++i) cr.g_mw[i] = gen.exponential(fading.lambda_mw[i]);
    return cr;
}

SelectionOrder selection_order(const ChannelRealization& realization, const FadingMap& fading) {
    const std::size_t m = realization.user_count();
    if (m != fading.user_count())
        throw std::invalid_argument("selection_order: realization and fading map sizes disagree");

    SelectionOrder so;
    so.ratios.resize(m);
    for (std::size_t i = 0; i < m; ++i) so.ratios[i] = realization.g_mb[i] / fading.lambda_mw[i];
    so.order.resize(m);
    std::iota(so.order.begin(), so.order.end(), std::size_t{0});
    std::sort(so.order.begin(), so.order.end(), [&](std::size_t a, std::size_t b) {
        if (so.ratios[a] != so.ratios[b]) return so.ratios[a] < so.ratios[b];
        return a < b;
    });
    return so;
}

}  // namespace covertnet
