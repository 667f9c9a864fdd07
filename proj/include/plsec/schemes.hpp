#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "plsec/channel.hpp"
#include "plsec/link_metrics.hpp"

namespace plsec {

/// What the eavesdropper hears during relayed transmission: only the
/// relay's retransmission, or that combined with the source broadcast of
/// phase one (maximal-ratio combining).
enum class EveMode {
    phase2_only,
    combine_phases,
};

/// Channel knowledge available to the transmit-antenna selector.
enum class CsiMode {
    main_only,
    global,
};

/// Multiuser scheduling policy: opportunistic argmax or fair rotation.
enum class SchedulePolicy {
    max_capacity,
    round_robin,
};

/// Result of evaluating one scheme on one fading realization.
struct TrialOutcome {
    Capacity c_main;
    Capacity c_wiretap;
    Capacity c_secrecy;
    std::optional<std::size_t> selected_index;
    bool intercepted = false;
};

namespace detail {

inline TrialOutcome make_outcome(Capacity c_main, Capacity c_wiretap,
                                 std::optional<std::size_t> selected) {
    TrialOutcome out;
    out.c_main = c_main;
    out.c_wiretap = c_wiretap;
    out.c_secrecy = secrecy_capacity(c_main, c_wiretap);
    out.selected_index = selected;
    // The boundary Cs = 0 counts as secure; the intercept event is strict.
    out.intercepted = out.c_secrecy.value < 0.0;
    return out;
}

} // namespace detail

/// Source transmits straight to destination at full power while the
/// eavesdropper listens.
inline TrialOutcome direct_transmission_trial(Snr gamma_s, const TrialGains& gains) {
    if (gamma_s.value < 0.0 || !std::isfinite(gamma_s.value)) {
        throw invalid_parameter("direct_transmission_trial: gamma_s must be >= 0 and finite");
    }
    const Capacity c_main = channel_capacity(Snr{gamma_s.value * gains.g_sd});
    const Capacity c_wiretap = channel_capacity(Snr{gamma_s.value * gains.g_se});
    return detail::make_outcome(c_main, c_wiretap, std::nullopt);
}

/// Index of the relay maximizing the selection metric over main-channel
/// gains only; wiretap gains are never consulted. Ties break to the lowest
/// index.
inline std::size_t best_relay_selection(const TrialGains& gains) {
    if (gains.relays.empty()) {
        throw no_relay_error("best_relay_selection: relay set is empty");
    }
    std::size_t best = 0;
    double best_metric = relay_selection_metric(gains.relays[0].g_sr, gains.relays[0].g_rd);
    for (std::size_t i = 1; i < gains.relays.size(); ++i) {
        const double metric = relay_selection_metric(gains.relays[i].g_sr, gains.relays[i].g_rd);
        if (metric > best_metric) {
            best_metric = metric;
            best = i;
        }
    }
    return best;
}

/// Best-relay AF transmission with the equal power split P/2 at source and
/// relay. The eavesdropper taps the selected relay's retransmission and, in
/// combine_phases mode, also adds the phase-one broadcast to its end-to-end
/// SNR.
inline TrialOutcome relay_transmission_trial(Snr gamma_s, const TrialGains& gains,
                                             bool prelog_half = true,
                                             EveMode eve_mode = EveMode::phase2_only) {
    if (gamma_s.value < 0.0 || !std::isfinite(gamma_s.value)) {
        throw invalid_parameter("relay_transmission_trial: gamma_s must be >= 0 and finite");
    }
    const std::size_t selected = best_relay_selection(gains);
    const TrialGains::Relay& relay = gains.relays[selected];

    const double half_power_snr = gamma_s.value / 2.0;
    const Snr gamma1{half_power_snr * relay.g_sr};
    const Snr gamma2{half_power_snr * relay.g_rd};
    const Snr gamma_eve{half_power_snr * relay.g_re};

    const double prelog = prelog_half ? 0.5 : 1.0;
    const Capacity c_main = channel_capacity(af_end_to_end_snr(gamma1, gamma2), prelog);

    double eve_snr = af_end_to_end_snr(gamma1, gamma_eve).value;
    if (eve_mode == EveMode::combine_phases) {
        eve_snr += half_power_snr * gains.g_se;
    }
    const Capacity c_wiretap = channel_capacity(Snr{eve_snr}, prelog);

    return detail::make_outcome(c_main, c_wiretap, selected);
}

/// Selects one of M transmit antennas and evaluates the resulting
/// single-phase outcome. main_only maximizes the main-channel gain; global
/// maximizes the per-antenna secrecy capacity. Ties break to the lowest
/// index.
inline TrialOutcome transmit_antenna_selection_trial(Snr gamma_s,
                                                     std::span<const double> main_gains,
                                                     std::span<const double> eve_gains,
                                                     CsiMode csi_mode = CsiMode::main_only) {
    if (main_gains.empty() || main_gains.size() != eve_gains.size()) {
        throw invalid_parameter(
            "transmit_antenna_selection_trial: gain lists must be non-empty and equal length");
    }
    if (gamma_s.value < 0.0 || !std::isfinite(gamma_s.value)) {
        throw invalid_parameter("transmit_antenna_selection_trial: gamma_s must be >= 0 and finite");
    }

    std::size_t best = 0;
    if (csi_mode == CsiMode::main_only) {
        for (std::size_t k = 1; k < main_gains.size(); ++k) {
            if (main_gains[k] > main_gains[best]) {
                best = k;
            }
        }
    } else {
        auto antenna_secrecy = [&](std::size_t k) {
            return secrecy_capacity(channel_capacity(Snr{gamma_s.value * main_gains[k]}),
                                    channel_capacity(Snr{gamma_s.value * eve_gains[k]}))
                .value;
        };
        double best_secrecy = antenna_secrecy(0);
        for (std::size_t k = 1; k < main_gains.size(); ++k) {
            const double secrecy = antenna_secrecy(k);
            if (secrecy > best_secrecy) {
                best_secrecy = secrecy;
                best = k;
            }
        }
    }

    const Capacity c_main = channel_capacity(Snr{gamma_s.value * main_gains[best]});
    const Capacity c_wiretap = channel_capacity(Snr{gamma_s.value * eve_gains[best]});
    TrialOutcome out = detail::make_outcome(c_main, c_wiretap, best);
    return out;
}

/// Picks the user for one slot. max_capacity selects the highest main gain
/// (capacity is monotone in gain), ties to the lowest index; round_robin
/// rotates by slot number.
inline std::size_t multiuser_schedule(std::span<const double> user_gains,
                                      SchedulePolicy policy, std::uint64_t slot) {
    if (user_gains.empty()) {
        throw invalid_parameter("multiuser_schedule: user list is empty");
    }
    if (policy == SchedulePolicy::round_robin) {
        return static_cast<std::size_t>(slot % user_gains.size());
    }
    std::size_t best = 0;
    for (std::size_t k = 1; k < user_gains.size(); ++k) {
        if (user_gains[k] > user_gains[best]) {
            best = k;
        }
    }
    return best;
}

/// Full multiuser slot: schedule a user, then evaluate the scheduled user's
/// single-phase transmission against the eavesdropper.
inline TrialOutcome multiuser_transmission_trial(Snr gamma_s,
                                                 std::span<const double> user_gains,
                                                 std::span<const double> eve_gains,
                                                 SchedulePolicy policy, std::uint64_t slot) {
    if (user_gains.empty() || user_gains.size() != eve_gains.size()) {
        throw invalid_parameter(
            "multiuser_transmission_trial: gain lists must be non-empty and equal length");
    }
    if (gamma_s.value < 0.0 || !std::isfinite(gamma_s.value)) {
        throw invalid_parameter("multiuser_transmission_trial: gamma_s must be >= 0 and finite");
    }
    const std::size_t user = multiuser_schedule(user_gains, policy, slot);
    const Capacity c_main = channel_capacity(Snr{gamma_s.value * user_gains[user]});
    const Capacity c_wiretap = channel_capacity(Snr{gamma_s.value * eve_gains[user]});
    return detail::make_outcome(c_main, c_wiretap, user);
}

} // namespace plsec
