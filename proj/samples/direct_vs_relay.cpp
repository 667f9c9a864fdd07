// Minimal library walkthrough: sweep the main-to-eavesdropper ratio and
// compare direct transmission against best-relay selection, checking the
// direct-scheme Monte Carlo estimate against its closed form.

#include <cstdio>

#include "plsec/estimator.hpp"

int main() {
    using namespace plsec;

    const Snr gamma_s{db_to_linear(12.0)};
    const std::uint64_t n_trials = 200000;
    const std::uint64_t seed = 2024;

    std::printf("%6s %12s %12s %14s %12s\n", "MER", "P_int direct", "closed form",
                "P_int relay M=4", "ESC relay");
    for (double mer_db : {0.0, 3.0, 6.0, 9.0, 12.0}) {
        FadingParams params;
        params.sigma2_sd = 0.5;
        params.sigma2_sr = 2.0;
        params.sigma2_rd = 2.0;
        params.sigma2_se = mer_to_sigma_se2(params.sigma2_sd, mer_db);
        params.sigma2_re = params.sigma2_se;

        const SchemeSpec direct{SchemeId::direct};
        SchemeSpec relay{SchemeId::relay_selection};
        relay.m = 4;
        relay.prelog_half = false;

        const Estimate p_direct = intercept_probability(direct, params, gamma_s, n_trials, seed);
        const Estimate p_relay = intercept_probability(relay, params, gamma_s, n_trials, seed);
        const Estimate esc_relay = ergodic_secrecy_capacity(relay, params, gamma_s, n_trials, seed);
        const double closed = direct_intercept_closed_form(params.sigma2_sd, params.sigma2_se);

        std::printf("%4.0fdB %12.5f %12.5f %14.5f %12.4f\n", mer_db, p_direct.mean, closed,
                    p_relay.mean, esc_relay.mean);
    }
    return 0;
}
