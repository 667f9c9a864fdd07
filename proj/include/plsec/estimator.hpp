#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "plsec/channel.hpp"
#include "plsec/schemes.hpp"

namespace plsec {

/// Monte Carlo statistic with normal-approximation 95% confidence bounds.
struct Estimate {
    double mean = 0.0;
    double std_err = 0.0;
    double ci95_low = 0.0;
    double ci95_high = 0.0;
    std::uint64_t n_trials = 0;

    friend bool operator==(const Estimate&, const Estimate&) = default;
};

enum class SchemeId {
    direct,
    relay_selection,
    tas_main,
    tas_global,
    multiuser_max,
    multiuser_rr,
};

inline const char* to_string(SchemeId id) {
    switch (id) {
    case SchemeId::direct: return "direct";
    case SchemeId::relay_selection: return "relay_selection";
    case SchemeId::tas_main: return "tas_main";
    case SchemeId::tas_global: return "tas_global";
    case SchemeId::multiuser_max: return "multiuser_max";
    case SchemeId::multiuser_rr: return "multiuser_rr";
    }
    return "?";
}

inline SchemeId scheme_from_string(const std::string& name) {
    for (SchemeId id : {SchemeId::direct, SchemeId::relay_selection, SchemeId::tas_main,
                        SchemeId::tas_global, SchemeId::multiuser_max, SchemeId::multiuser_rr}) {
        if (name == to_string(id)) {
            return id;
        }
    }
    throw invalid_parameter("unknown scheme id: " + name);
}

/// Everything needed to evaluate one scheme: which scheme, how many
/// selectable nodes (relays, antennas, or users), and the relay mode flags.
struct SchemeSpec {
    SchemeId id = SchemeId::direct;
    std::size_t m = 1;
    bool prelog_half = true;
    EveMode eve_mode = EveMode::phase2_only;

    void validate() const {
        if (id != SchemeId::direct && m < 1) {
            throw invalid_parameter(std::string("SchemeSpec: scheme ") + to_string(id) +
                                    " requires m >= 1");
        }
    }
};

/// Intercept probability of direct transmission in closed form:
/// sigma2_se / (sigma2_sd + sigma2_se) = 1 / (1 + lambda_me).
inline double direct_intercept_closed_form(double sigma2_sd, double sigma2_se) {
    if (!(sigma2_sd > 0.0) || !(sigma2_se > 0.0)) {
        throw invalid_parameter("direct_intercept_closed_form: variances must be > 0");
    }
    return sigma2_se / (sigma2_sd + sigma2_se);
}

/// Evaluates one trial of the given scheme. The draw order inside the
/// trial's substream is fixed per scheme, so outcomes are pure in
/// (spec, params, gamma_s, seed).
inline TrialOutcome evaluate_trial(const SchemeSpec& spec, const FadingParams& params,
                                   Snr gamma_s, SeedSpec seed) {
    switch (spec.id) {
    case SchemeId::direct: {
        const TrialGains gains = draw_trial_gains(params, 0, seed);
        return direct_transmission_trial(gamma_s, gains);
    }
    case SchemeId::relay_selection: {
        const TrialGains gains = draw_trial_gains(params, spec.m, seed);
        return relay_transmission_trial(gamma_s, gains, spec.prelog_half, spec.eve_mode);
    }
    case SchemeId::tas_main:
    case SchemeId::tas_global: {
        const BranchGains gains = draw_branch_gains(params.sigma2_sd, params.sigma2_se, spec.m, seed);
        const CsiMode csi = spec.id == SchemeId::tas_global ? CsiMode::global : CsiMode::main_only;
        return transmit_antenna_selection_trial(gamma_s, gains.main, gains.eve, csi);
    }
    case SchemeId::multiuser_max:
    case SchemeId::multiuser_rr: {
        const BranchGains gains = draw_branch_gains(params.sigma2_sd, params.sigma2_se, spec.m, seed);
        const SchedulePolicy policy = spec.id == SchemeId::multiuser_rr
                                          ? SchedulePolicy::round_robin
                                          : SchedulePolicy::max_capacity;
        return multiuser_transmission_trial(gamma_s, gains.main, gains.eve, policy, seed.stream_id);
    }
    }
    throw invalid_parameter("evaluate_trial: unknown scheme id");
}

/// Optional per-trial tap for debugging; forces the sequential path.
using TrialSink = std::function<void(std::uint64_t trial, const TrialOutcome&)>;

namespace detail {

struct TrialAccum {
    double sum_pos = 0.0;    ///< sum of max(Cs, 0)
    double sumsq_pos = 0.0;  ///< sum of max(Cs, 0)^2
    std::uint64_t intercepts = 0;
    std::uint64_t n = 0;
};

// Trials are split into fixed-size blocks indexed independently of the
// worker count; block partials are merged in block order, so the reduction
// is bitwise identical for any number of threads.
inline constexpr std::uint64_t kTrialsPerBlock = 16384;

inline void accumulate_trial(TrialAccum& acc, const TrialOutcome& outcome) {
    const double pos = std::max(outcome.c_secrecy.value, 0.0);
    acc.sum_pos += pos;
    acc.sumsq_pos += pos * pos;
    acc.intercepts += outcome.intercepted ? 1 : 0;
    ++acc.n;
}

inline TrialAccum run_trials(const SchemeSpec& spec, const FadingParams& params, Snr gamma_s,
                             std::uint64_t n_trials, std::uint64_t master_seed,
                             unsigned threads, const TrialSink& sink = nullptr) {
    spec.validate();
    params.validate();
    if (n_trials < 1) {
        throw invalid_parameter("run_trials: n_trials must be >= 1");
    }

    auto run_block = [&](std::uint64_t first, std::uint64_t last) {
        TrialAccum acc;
        for (std::uint64_t t = first; t < last; ++t) {
            const TrialOutcome outcome = evaluate_trial(spec, params, gamma_s,
                                                        SeedSpec{master_seed, t});
            accumulate_trial(acc, outcome);
            if (sink) {
                sink(t, outcome);
            }
        }
        return acc;
    };

    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    const std::uint64_t n_blocks = (n_trials + kTrialsPerBlock - 1) / kTrialsPerBlock;

    std::vector<TrialAccum> blocks(static_cast<std::size_t>(n_blocks));
    if (threads == 1 || n_blocks == 1 || sink) {
        for (std::uint64_t b = 0; b < n_blocks; ++b) {
            blocks[b] = run_block(b * kTrialsPerBlock,
                                  std::min(n_trials, (b + 1) * kTrialsPerBlock));
        }
    } else {
        std::atomic<std::uint64_t> next_block{0};
        auto worker = [&] {
            for (std::uint64_t b = next_block.fetch_add(1); b < n_blocks;
                 b = next_block.fetch_add(1)) {
                blocks[b] = run_block(b * kTrialsPerBlock,
                                      std::min(n_trials, (b + 1) * kTrialsPerBlock));
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned i = 0; i < threads; ++i) {
            pool.emplace_back(worker);
        }
        for (auto& thread : pool) {
            thread.join();
        }
    }

    TrialAccum total;
    for (const TrialAccum& block : blocks) {
        total.sum_pos += block.sum_pos;
        total.sumsq_pos += block.sumsq_pos;
        total.intercepts += block.intercepts;
        total.n += block.n;
    }
    return total;
}

inline Estimate finalize(double mean, double std_err, std::uint64_t n) {
    Estimate est;
    est.mean = mean;
    est.std_err = std_err;
    est.ci95_low = mean - 1.96 * std_err;
    est.ci95_high = mean + 1.96 * std_err;
    est.n_trials = n;
    return est;
}

} // namespace detail

/// Sample mean of max(Cs, 0) over n independent fading realizations, with
/// the sample-standard-deviation standard error.
inline Estimate ergodic_secrecy_capacity(const SchemeSpec& spec, const FadingParams& params,
                                         Snr gamma_s, std::uint64_t n_trials,
                                         std::uint64_t master_seed, unsigned threads = 1,
                                         const TrialSink& sink = nullptr) {
    const detail::TrialAccum acc =
        detail::run_trials(spec, params, gamma_s, n_trials, master_seed, threads, sink);
    const double n = static_cast<double>(acc.n);
    const double mean = acc.sum_pos / n;
    double std_err = 0.0;
    if (acc.n > 1) {
        const double variance = std::max(0.0, (acc.sumsq_pos - n * mean * mean) / (n - 1.0));
        std_err = std::sqrt(variance / n);
    }
    return detail::finalize(mean, std_err, acc.n);
}

/// Fraction of realizations with Cs < 0, with the exact binomial standard
/// error sqrt(p(1-p)/n).
inline Estimate intercept_probability(const SchemeSpec& spec, const FadingParams& params,
                                      Snr gamma_s, std::uint64_t n_trials,
                                      std::uint64_t master_seed, unsigned threads = 1,
                                      const TrialSink& sink = nullptr) {
    const detail::TrialAccum acc =
        detail::run_trials(spec, params, gamma_s, n_trials, master_seed, threads, sink);
    const double n = static_cast<double>(acc.n);
    const double p = static_cast<double>(acc.intercepts) / n;
    const double std_err = std::sqrt(p * (1.0 - p) / n);
    return detail::finalize(p, std_err, acc.n);
}

} // namespace plsec
