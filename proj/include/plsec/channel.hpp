#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "plsec/errors.hpp"
#include "plsec/rng.hpp"

namespace plsec {

/// Mean power gains of every link class in the scenario. Under Rayleigh
/// fading the instantaneous power gain of a link is exponentially
/// distributed with the corresponding mean.
struct FadingParams {
    double sigma2_sd = 0.0; ///< source -> destination
    double sigma2_sr = 0.0; ///< source -> relay
    double sigma2_rd = 0.0; ///< relay -> destination
    double sigma2_se = 0.0; ///< source -> eavesdropper
    double sigma2_re = 0.0; ///< relay -> eavesdropper

    /// A runnable scenario needs every mean strictly positive; zero is only
    /// meaningful when unit-testing the samplers.
    void validate() const {
        for (double v : {sigma2_sd, sigma2_sr, sigma2_rd, sigma2_se, sigma2_re}) {
            if (!(v > 0.0) || !std::isfinite(v)) {
                throw invalid_parameter("FadingParams: every mean power gain must be > 0 and finite");
            }
        }
    }
};

/// One fading realization of the whole network.
struct TrialGains {
    struct Relay {
        double g_sr = 0.0; ///< source -> relay i
        double g_rd = 0.0; ///< relay i -> destination
        double g_re = 0.0; ///< relay i -> eavesdropper
    };

    double g_sd = 0.0;
    double g_se = 0.0;
    std::vector<Relay> relays;
};

/// Per-branch gains for transmit-antenna selection and multiuser
/// scheduling: branch k has its own main and wiretap gain.
struct BranchGains {
    std::vector<double> main;
    std::vector<double> eve;
};

inline double db_to_linear(double x_db) {
    return std::pow(10.0, x_db / 10.0);
}

/// Wiretap mean gain from the main mean gain and the main-to-eavesdropper
/// ratio: sigma2_se = sigma2_sd / lambda_me.
inline double mer_to_sigma_se2(double sigma2_sd, double mer_db) {
    if (!(sigma2_sd > 0.0)) {
        throw invalid_parameter("mer_to_sigma_se2: sigma2_sd must be > 0");
    }
    return sigma2_sd / db_to_linear(mer_db);
}

/// One exponential draw with the given mean, via inverse CDF of a uniform
/// deviate. Exact and branch-free, so identical across platforms given the
/// same uniform stream.
inline double sample_rayleigh_power(double variance, Philox4x64& rng) {
    if (variance < 0.0 || !std::isfinite(variance)) {
        throw invalid_parameter("sample_rayleigh_power: variance must be >= 0 and finite");
    }
    const double u = rng.next_unit();
    return -variance * std::log1p(-u);
}

/// Draws the 2 + 3M gains of one relay-network realization in a fixed
/// order: g_sd, g_se, then (g_sr, g_rd, g_re) per relay.
inline TrialGains draw_trial_gains(const FadingParams& params, std::size_t num_relays,
                                   SeedSpec seed) {
    Philox4x64 rng(seed);
    TrialGains gains;
    gains.g_sd = sample_rayleigh_power(params.sigma2_sd, rng);
    gains.g_se = sample_rayleigh_power(params.sigma2_se, rng);
    gains.relays.reserve(num_relays);
    for (std::size_t i = 0; i < num_relays; ++i) {
        TrialGains::Relay relay;
        relay.g_sr = sample_rayleigh_power(params.sigma2_sr, rng);
        relay.g_rd = sample_rayleigh_power(params.sigma2_rd, rng);
        relay.g_re = sample_rayleigh_power(params.sigma2_re, rng);
        gains.relays.push_back(relay);
    }
    return gains;
}

/// Draws M (main, eve) gain pairs for branch-selection schemes, main
/// branches first, then eve branches.
inline BranchGains draw_branch_gains(double sigma2_main, double sigma2_eve,
                                     std::size_t num_branches, SeedSpec seed) {
    Philox4x64 rng(seed);
    BranchGains gains;
    gains.main.reserve(num_branches);
    gains.eve.reserve(num_branches);
    for (std::size_t k = 0; k < num_branches; ++k) {
        gains.main.push_back(sample_rayleigh_power(sigma2_main, rng));
    }
    for (std::size_t k = 0; k < num_branches; ++k) {
        gains.eve.push_back(sample_rayleigh_power(sigma2_eve, rng));
    }
    return gains;
}

} // namespace plsec
