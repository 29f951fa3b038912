#include "qlink/maqkd.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qlink/errors.hpp"

namespace qlink::maqkd {

namespace {

constexpr double kLog2 = 0.6931471805599453;

double clamp_qber(double e) { return std::clamp(e, 0.0, 0.5); }

/// Transmissivity of one space-ground hop of the midpoint geometry.
/// Throws BelowHorizon via the geometry layer when the link closes.
double midpoint_hop_eta(double ground_distance_km, const geometry::OrbitConfig& orbit,
                        const geometry::EarthModel& earth, const channel::ChannelStack& stack) {
    const auto [link, other] = geometry::los_midpoint_geometry(ground_distance_km, orbit, earth);
    (void)other;  // symmetric
    return channel::hop_transmission(link, stack.beam, stack.receiver, stack.atmosphere,
                                     stack.pointing, stack.stray)
        .eta_total;
}

double midpoint_los_km(double ground_distance_km, const geometry::OrbitConfig& orbit,
                       const geometry::EarthModel& earth) {
    return geometry::slant_range(ground_distance_km / 2.0, orbit, earth);
}

/// Dark-count floor on the Z-basis error: fraction of clicks at a
/// detection stage that are noise rather than signal, feeding a random
/// outcome half the time. `signal_prob` is the per-window click
/// probability of the real photon at that stage (two detectors).
double dark_floor(double signal_prob, const channel::DetectorModel& detector,
                  double stray_per_window) {
    const double noise = 2.0 * channel::noise_probability_per_window(detector, stray_per_window);
    if (signal_prob + noise <= 0.0) {
        return 0.0;
    }
    return 0.5 * noise / (signal_prob + noise);
}

struct GeometricTail {
    double plain;    // sum_{d=1..C} q^d
    double weighted; // sum_{d=1..C} d q^d
};

/// Exact geometric sums with a (possibly unbounded) band limit C.
GeometricTail tail_sums(double q, double one_minus_q, std::int64_t cutoff) {
    GeometricTail t{0.0, 0.0};
    if (q <= 0.0) {
        return t;
    }
    if (cutoff == kNoCutoff) {
        t.plain = q / one_minus_q;
        t.weighted = q / (one_minus_q * one_minus_q);
        return t;
    }
    const double c = static_cast<double>(cutoff);
    const double q_pow_c = std::exp(c * std::log(q));  // underflows to 0 for huge C
    t.plain = q * (1.0 - q_pow_c) / one_minus_q;
    t.weighted = q * (1.0 - (c + 1.0) * q_pow_c + c * q_pow_c * q) /
                 (one_minus_q * one_minus_q);
    return t;
}

}  // namespace

void MemoryModel::set_combined_efficiency(double combined) {
    if (!(combined >= 0.0 && combined <= 1.0)) {
        throw DomainError("memory efficiency must lie in [0, 1]");
    }
    write_efficiency = read_efficiency = std::sqrt(combined);
}

double binary_entropy(double e) {
    if (!(e >= 0.0 && e <= 1.0)) {
        throw DomainError("binary entropy argument must lie in [0, 1], got " +
                          std::to_string(e));
    }
    if (e == 0.0 || e == 1.0) {
        return 0.0;
    }
    return -(e * std::log(e) + (1.0 - e) * std::log1p(-e)) / kLog2;
}

double secret_key_rate(double yield, double qber_x, double qber_z, double ec_inefficiency) {
    const double bracket =
        1.0 - binary_entropy(qber_x) - ec_inefficiency * binary_entropy(qber_z);
    return std::max(0.0, 0.5 * yield * bracket);
}

WaitStats geometric_wait_stats(double p_a, double p_b, std::int64_t cutoff_uses,
                               double decay_per_use) {
    if (!(p_a > 0.0 && p_a <= 1.0) || !(p_b > 0.0 && p_b <= 1.0)) {
        throw DomainError("per-use success probabilities must lie in (0, 1]");
    }
    if (cutoff_uses < 1) {
        throw DomainError("cutoff_uses must be >= 1");
    }
    if (!(decay_per_use >= 0.0)) {
        throw DomainError("decay_per_use must be >= 0");
    }

    const double q_a = 1.0 - p_a;
    const double q_b = 1.0 - p_b;
    // 1 - q_a q_b without cancellation
    const double one_minus_x = p_a + p_b - p_a * p_b;
    const double band_weight = 1.0 / one_minus_x;

    const GeometricTail tail_a = tail_sums(q_a, p_a, cutoff_uses);
    const GeometricTail tail_b = tail_sums(q_b, p_b, cutoff_uses);

    const double joint = p_a * p_b;
    const double success = joint * band_weight * (1.0 + tail_a.plain + tail_b.plain);
    const double max_mass =
        joint * (band_weight * band_weight * (1.0 + tail_a.plain + tail_b.plain) +
                 band_weight * (tail_a.weighted + tail_b.weighted));

    // decayed band sums: ratio q e^{-gamma}, denominator 1 - q e^{-gamma}
    const double damp = std::exp(-decay_per_use);
    const double den_a = -std::expm1(-decay_per_use) + p_a * damp;
    const double den_b = -std::expm1(-decay_per_use) + p_b * damp;
    const double decayed = joint * band_weight *
                           (1.0 + tail_sums(q_a * damp, den_a, cutoff_uses).plain +
                            tail_sums(q_b * damp, den_b, cutoff_uses).plain);

    WaitStats stats;
    stats.success_prob = std::min(success, 1.0);
    stats.expected_uses = max_mass / success;
    stats.dephasing_factor = std::min(decayed / success, 1.0);
    return stats;
}

KeyRateResult e91_rate(double ground_distance_km, const geometry::OrbitConfig& orbit,
                       const geometry::EarthModel& earth, const channel::ChannelStack& stack,
                       const ProtocolParams& params) {
    const double hop = midpoint_hop_eta(ground_distance_km, orbit, earth, stack);
    const double side = hop * stack.detector.efficiency;
    const double p_noise = channel::noise_probability_per_window(
        stack.detector, channel::stray_counts(stack.stray, stack.receiver));
    const double mu = params.pair_emission_prob;

    // gain of a pair pulse, plus accidental coincidences of empty pulses
    const double pair_gain = side * side +
                             2.0 * p_noise * (side * (1.0 - side) + side * (1.0 - side)) +
                             4.0 * p_noise * p_noise * (1.0 - side) * (1.0 - side);
    const double gain = mu * pair_gain + (1.0 - mu) * 4.0 * p_noise * p_noise;

    KeyRateResult result;
    result.attempts_per_s = params.source_rate_hz;
    result.yield_per_use = gain;
    if (gain <= 0.0) {
        return result;
    }
    const double error_gain =
        params.misalignment_error * mu * side * side + 0.5 * (gain - mu * side * side);
    const double qber = clamp_qber(error_gain / gain);
    result.qber_x = result.qber_z = qber;

    const double bracket = 1.0 - (1.0 + params.ec_inefficiency) * binary_entropy(qber);
    result.secret_bits_per_s =
        std::max(0.0, params.source_rate_hz * 0.5 * gain * bracket);
    return result;
}

KeyRateResult uplink_ma_rate(double ground_distance_km, const geometry::OrbitConfig& orbit,
                             const geometry::EarthModel& earth,
                             const channel::ChannelStack& stack, const MemoryModel& memory,
                             const ProtocolParams& params) {
    const double hop = midpoint_hop_eta(ground_distance_km, orbit, earth, stack);
    const double excess = std::pow(10.0, -params.uplink_extra_loss_db / 10.0);
    const double p_side = hop * excess * memory.qnd_efficiency * memory.write_efficiency;

    KeyRateResult result;
    if (!(p_side > 0.0)) {
        return result;  // no loading, no key; sweeps stay total
    }

    const double decay = 1.0 / (params.source_rate_hz * memory.dephasing_time_s);
    const WaitStats stats = geometric_wait_stats(p_side, p_side, kNoCutoff, decay);

    result.attempts_per_s = params.source_rate_hz / stats.expected_uses;
    const double read_det = memory.read_efficiency * stack.detector.efficiency;
    result.yield_per_use = params.bsm_success * read_det * read_det;
    result.qber_x = clamp_qber(params.misalignment_error +
                               0.5 * (1.0 - stats.dephasing_factor));
    result.qber_z = clamp_qber(
        params.misalignment_error +
        dark_floor(read_det, stack.detector,
                   channel::stray_counts(stack.stray, stack.receiver)));
    result.secret_bits_per_s =
        result.attempts_per_s * secret_key_rate(result.yield_per_use, result.qber_x,
                                                result.qber_z, params.ec_inefficiency);
    return result;
}

KeyRateResult downlink_ma_rate(double ground_distance_km, const geometry::OrbitConfig& orbit,
                               const geometry::EarthModel& earth,
                               const channel::ChannelStack& stack, const MemoryModel& memory,
                               const ProtocolParams& params) {
    KeyRateResult result;
    const double hop = midpoint_hop_eta(ground_distance_km, orbit, earth, stack);
    const double q = hop * stack.detector.efficiency;
    if (!(q > 0.0)) {
        return result;
    }

    const double los_km = midpoint_los_km(ground_distance_km, orbit, earth);
    const double round_s = 2.0 * los_km / constants::speed_of_light_km_s;
    const double slots = static_cast<double>(memory.temporal_modes) *
                         static_cast<double>(memory.pairs);
    const double rounds_in_tau = std::floor(memory.dephasing_time_s / round_s);
    if (rounds_in_tau < 1.0) {
        return result;  // memory cannot even hold one heralding round
    }

    // Slot clock: N*m mode slots per heralding round. The storage window
    // and the dephasing rate are physical times, converted to slot units.
    const double slot_rate = slots / round_s;
    const std::int64_t cutoff =
        static_cast<std::int64_t>(std::min(rounds_in_tau * slots, 9.0e18));
    const double decay = (round_s / memory.dephasing_time_s) / slots;

    const WaitStats stats = geometric_wait_stats(q, q, cutoff, decay);

    result.attempts_per_s = slot_rate * stats.success_prob / stats.expected_uses;
    const double read_det = memory.read_efficiency * stack.detector.efficiency;
    result.yield_per_use = params.bsm_success * read_det * read_det;
    result.qber_x = clamp_qber(params.misalignment_error +
                               0.5 * (1.0 - stats.dephasing_factor));
    result.qber_z = clamp_qber(
        params.misalignment_error +
        dark_floor(q, stack.detector, channel::stray_counts(stack.stray, stack.receiver)));
    result.secret_bits_per_s =
        result.attempts_per_s * secret_key_rate(result.yield_per_use, result.qber_x,
                                                result.qber_z, params.ec_inefficiency);
    return result;
}

RateMap rate_map(Protocol protocol, double ground_distance_km,
                 const geometry::OrbitConfig& orbit, const geometry::EarthModel& earth,
                 const channel::ChannelStack& stack, const MemoryModel& memory,
                 const ProtocolParams& params, const std::vector<double>& tau_values,
                 const std::vector<double>& eta_values) {
    RateMap map;
    map.tau_s = tau_values;
    map.eta_mem = eta_values;
    map.rate_bits_per_s.reserve(tau_values.size() * eta_values.size());
    for (const double tau : tau_values) {
        for (const double eta : eta_values) {
            MemoryModel cell = memory;
            cell.dephasing_time_s = tau;
            cell.set_combined_efficiency(eta);
            double rate = 0.0;
            try {
                const KeyRateResult r =
                    protocol == Protocol::Uplink
                        ? uplink_ma_rate(ground_distance_km, orbit, earth, stack, cell, params)
                        : downlink_ma_rate(ground_distance_km, orbit, earth, stack, cell,
                                           params);
                rate = r.secret_bits_per_s;
            } catch (const Error&) {
                rate = 0.0;  // grid stays total
            }
            map.rate_bits_per_s.push_back(rate);
        }
    }
    return map;
}

}  // namespace qlink::maqkd
