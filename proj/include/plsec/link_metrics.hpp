#pragma once

#include <cmath>

#include "plsec/errors.hpp"

namespace plsec {

/// Linear signal-to-noise ratio, gamma = P / N0. Power and noise never
/// appear separately in the model.
struct Snr {
    double value = 0.0;
};

/// Spectral efficiency in bits/s/Hz. Per-link capacities are nonnegative;
/// secrecy capacities (differences) may have either sign.
struct Capacity {
    double value = 0.0;
};

/// Shannon capacity prelog * log2(1 + snr). The prelog is 1 for one-phase
/// transmission and 1/2 when the realization occupies two channel uses.
inline Capacity channel_capacity(Snr snr, double prelog = 1.0) {
    if (snr.value < 0.0 || !std::isfinite(snr.value)) {
        throw invalid_parameter("channel_capacity: snr must be >= 0 and finite");
    }
    return Capacity{prelog * std::log2(1.0 + snr.value)};
}

/// Main-channel capacity minus wiretap capacity, sign preserved. Clamping
/// to max(Cs, 0) is the caller's concern.
inline Capacity secrecy_capacity(Capacity c_main, Capacity c_wiretap) {
    return Capacity{c_main.value - c_wiretap.value};
}

/// Exact two-hop amplify-and-forward end-to-end SNR,
/// gamma1 * gamma2 / (gamma1 + gamma2 + 1). The denominator's +1 keeps the
/// origin well defined (dead hop -> 0).
inline Snr af_end_to_end_snr(Snr gamma1, Snr gamma2) {
    return Snr{gamma1.value * gamma2.value / (gamma1.value + gamma2.value + 1.0)};
}

/// Relay ranking metric g_sr * g_rd / (g_sr + g_rd): the high-SNR proxy of
/// the AF end-to-end SNR, computed from main-channel gains only. A relay
/// with both hops dead ranks last (metric 0), never NaN.
inline double relay_selection_metric(double g_sr, double g_rd) {
    const double sum = g_sr + g_rd;
    if (sum == 0.0) {
        return 0.0;
    }
    return g_sr * g_rd / sum;
}

} // namespace plsec
