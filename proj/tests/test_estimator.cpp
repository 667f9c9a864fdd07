#include <cmath>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "plsec/estimator.hpp"

using namespace plsec;

namespace {

const FadingParams kEqualGains{0.5, 2.0, 2.0, 0.5, 0.5};
constexpr double kGamma12dB = 15.848931924611133;

FadingParams params_at_mer(double mer_db) {
    FadingParams params;
    params.sigma2_sd = 0.5;
    params.sigma2_sr = 2.0;
    params.sigma2_rd = 2.0;
    params.sigma2_se = mer_to_sigma_se2(params.sigma2_sd, mer_db);
    params.sigma2_re = params.sigma2_se;
    return params;
}

bool bitwise_equal(const Estimate& a, const Estimate& b) {
    return a.mean == b.mean && a.std_err == b.std_err && a.ci95_low == b.ci95_low &&
           a.ci95_high == b.ci95_high && a.n_trials == b.n_trials;
}

} // namespace

TEST_CASE("direct_intercept_closed_form") {
    CHECK(direct_intercept_closed_form(0.5, 0.5) == 0.5);
    CHECK_THAT(direct_intercept_closed_form(0.5, 0.05),
               Catch::Matchers::WithinRel(1.0 / 11.0, 1e-12));
    CHECK_THAT(direct_intercept_closed_form(1.0, 1e-9), Catch::Matchers::WithinRel(1e-9, 1e-6));
    CHECK_THROWS_AS(direct_intercept_closed_form(0.0, 0.5), invalid_parameter);
    CHECK_THROWS_AS(direct_intercept_closed_form(0.5, -0.1), invalid_parameter);
}

TEST_CASE("SchemeSpec validation") {
    SchemeSpec relay{SchemeId::relay_selection};
    relay.m = 0;
    CHECK_THROWS_AS(relay.validate(), invalid_parameter);
    SchemeSpec direct{SchemeId::direct};
    direct.m = 0;
    CHECK_NOTHROW(direct.validate());
}

TEST_CASE("scheme id round-trips through its name") {
    for (SchemeId id : {SchemeId::direct, SchemeId::relay_selection, SchemeId::tas_main,
                        SchemeId::tas_global, SchemeId::multiuser_max, SchemeId::multiuser_rr}) {
        CHECK(scheme_from_string(to_string(id)) == id);
    }
    CHECK_THROWS_AS(scheme_from_string("carrier_pigeon"), invalid_parameter);
}

TEST_CASE("zero SNR gives exactly zero ergodic secrecy capacity") {
    const Estimate est = ergodic_secrecy_capacity(SchemeSpec{SchemeId::direct}, kEqualGains,
                                                  Snr{0.0}, 5000, 99);
    CHECK(est.mean == 0.0);
    CHECK(est.std_err == 0.0);
    CHECK(est.n_trials == 5000);
}

TEST_CASE("invalid trial counts are rejected") {
    CHECK_THROWS_AS(ergodic_secrecy_capacity(SchemeSpec{SchemeId::direct}, kEqualGains,
                                             Snr{1.0}, 0, 1),
                    invalid_parameter);
}

TEST_CASE("estimates are bitwise deterministic across thread counts") {
    SchemeSpec relay{SchemeId::relay_selection};
    relay.m = 4;
    const std::uint64_t n = 60000;
    const Estimate one = ergodic_secrecy_capacity(relay, params_at_mer(6.0), Snr{kGamma12dB},
                                                  n, 31415, 1);
    for (unsigned threads : {2u, 3u, 8u}) {
        const Estimate many = ergodic_secrecy_capacity(relay, params_at_mer(6.0), Snr{kGamma12dB},
                                                       n, 31415, threads);
        CHECK(bitwise_equal(one, many));
    }
    const Estimate p_one = intercept_probability(relay, params_at_mer(6.0), Snr{kGamma12dB},
                                                 n, 31415, 1);
    const Estimate p_many = intercept_probability(relay, params_at_mer(6.0), Snr{kGamma12dB},
                                                  n, 31415, 8);
    CHECK(bitwise_equal(p_one, p_many));
}

TEST_CASE("intercept probability is prelog-invariant at fixed seed") {
    SchemeSpec half{SchemeId::relay_selection};
    half.m = 3;
    half.prelog_half = true;
    SchemeSpec full = half;
    full.prelog_half = false;
    const Estimate a = intercept_probability(half, params_at_mer(3.0), Snr{kGamma12dB}, 40000, 7);
    const Estimate b = intercept_probability(full, params_at_mer(3.0), Snr{kGamma12dB}, 40000, 7);
    CHECK(bitwise_equal(a, b));
}

TEST_CASE("direct intercept estimate matches the closed form") {
    const Estimate est = intercept_probability(SchemeSpec{SchemeId::direct}, kEqualGains,
                                               Snr{kGamma12dB}, 1000000, 2718, 2);
    const double expected = direct_intercept_closed_form(0.5, 0.5);
    CHECK(std::abs(est.mean - expected) <= 3.0 * est.std_err);
    CHECK(est.ci95_low <= est.mean);
    CHECK(est.mean <= est.ci95_high);
    CHECK_THAT(est.ci95_high - est.mean, Catch::Matchers::WithinRel(1.96 * est.std_err, 1e-12));
}

TEST_CASE("symmetric direct channel still has positive ergodic secrecy capacity") {
    // brute-force reference (1e8 trials): 0.71815 +- 0.0001
    const Estimate est = ergodic_secrecy_capacity(SchemeSpec{SchemeId::direct}, kEqualGains,
                                                  Snr{kGamma12dB}, 1000000, 161803, 2);
    CHECK(est.ci95_low > 0.0);
    CHECK_THAT(est.mean, Catch::Matchers::WithinAbs(0.7181512569591129, 0.0045));
}

TEST_CASE("standard error shrinks like 1/sqrt(n)") {
    SchemeSpec direct{SchemeId::direct};
    const Estimate small = ergodic_secrecy_capacity(direct, params_at_mer(3.0), Snr{kGamma12dB},
                                                    20000, 4242);
    const Estimate large = ergodic_secrecy_capacity(direct, params_at_mer(3.0), Snr{kGamma12dB},
                                                    80000, 4242);
    // quadrupling n halves the standard error, within 15%
    CHECK_THAT(small.std_err / large.std_err, Catch::Matchers::WithinRel(2.0, 0.15));

    const Estimate dbl = ergodic_secrecy_capacity(direct, params_at_mer(3.0), Snr{kGamma12dB},
                                                  40000, 4242);
    CHECK_THAT(small.std_err / dbl.std_err, Catch::Matchers::WithinRel(std::sqrt(2.0), 0.15));
}

TEST_CASE("per-trial sink observes every outcome in order") {
    SchemeSpec relay{SchemeId::relay_selection};
    relay.m = 2;
    const std::uint64_t n = 500;
    const std::uint64_t seed = 808;
    std::vector<TrialOutcome> dumped;
    std::vector<std::uint64_t> ids;
    const Estimate est = intercept_probability(
        relay, params_at_mer(6.0), Snr{kGamma12dB}, n, seed, 4,
        [&](std::uint64_t t, const TrialOutcome& out) {
            ids.push_back(t);
            dumped.push_back(out);
        });
    REQUIRE(dumped.size() == n);
    std::uint64_t intercepts = 0;
    for (std::uint64_t t = 0; t < n; ++t) {
        CHECK(ids[t] == t);
        const TrialOutcome replay = evaluate_trial(relay, params_at_mer(6.0), Snr{kGamma12dB},
                                                   SeedSpec{seed, t});
        CHECK(replay.c_secrecy.value == dumped[t].c_secrecy.value);
        intercepts += dumped[t].intercepted ? 1 : 0;
    }
    CHECK(est.mean == static_cast<double>(intercepts) / static_cast<double>(n));
}

TEST_CASE("multiuser scheduling estimates favor opportunistic selection") {
    SchemeSpec max_cap{SchemeId::multiuser_max};
    max_cap.m = 4;
    SchemeSpec round_robin{SchemeId::multiuser_rr};
    round_robin.m = 4;
    const Estimate opportunistic = ergodic_secrecy_capacity(max_cap, params_at_mer(6.0),
                                                            Snr{kGamma12dB}, 100000, 5150, 2);
    const Estimate fair = ergodic_secrecy_capacity(round_robin, params_at_mer(6.0),
                                                   Snr{kGamma12dB}, 100000, 5150, 2);
    // argmax scheduling beats rotation on ergodic secrecy capacity
    CHECK(opportunistic.ci95_low > fair.ci95_high);

    const Estimate p_opp = intercept_probability(max_cap, params_at_mer(6.0), Snr{kGamma12dB},
                                                 100000, 5150, 2);
    const Estimate p_fair = intercept_probability(round_robin, params_at_mer(6.0),
                                                  Snr{kGamma12dB}, 100000, 5150, 2);
    CHECK(p_opp.ci95_high < p_fair.ci95_low);
    // round robin ignores the gains, so its intercept probability is the
    // direct-transmission one
    const double direct_p = direct_intercept_closed_form(0.5, mer_to_sigma_se2(0.5, 6.0));
    CHECK(std::abs(p_fair.mean - direct_p) <= 3.0 * p_fair.std_err);
}

TEST_CASE("global-CSI antenna selection dominates main-only in estimate") {
    SchemeSpec global{SchemeId::tas_global};
    global.m = 4;
    SchemeSpec main_only{SchemeId::tas_main};
    main_only.m = 4;
    const Estimate esc_global = ergodic_secrecy_capacity(global, params_at_mer(3.0),
                                                         Snr{kGamma12dB}, 100000, 2025, 2);
    const Estimate esc_main = ergodic_secrecy_capacity(main_only, params_at_mer(3.0),
                                                       Snr{kGamma12dB}, 100000, 2025, 2);
    CHECK(esc_global.mean >= esc_main.mean);

    const Estimate p_global = intercept_probability(global, params_at_mer(3.0), Snr{kGamma12dB},
                                                    100000, 2025, 2);
    const Estimate p_main = intercept_probability(main_only, params_at_mer(3.0), Snr{kGamma12dB},
                                                  100000, 2025, 2);
    CHECK(p_global.mean <= p_main.mean);
}
