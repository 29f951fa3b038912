#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "qlink/channel.hpp"
#include "qlink/geometry.hpp"

namespace qlink::maqkd {

/// Memory bank at the middle station. Read and write efficiencies combine
/// multiplicatively; qnd_efficiency is the heralding efficiency of the
/// non-destructive photon detection in front of the memories.
struct MemoryModel {
    double dephasing_time_s = 5e-3;
    double write_efficiency = 0.8944271909999159;  // sqrt(0.8)
    double read_efficiency = 0.8944271909999159;
    std::int64_t temporal_modes = 1;
    std::int64_t pairs = 1;
    double qnd_efficiency = 0.5;

    double combined_efficiency() const { return write_efficiency * read_efficiency; }
    void set_combined_efficiency(double combined);
};

/// Everything the key-rate bound and the loading model need beyond the
/// optical channel. The last two fields are calibration knobs; see
/// docs/model_ledger.md for how their defaults were fixed.
struct ProtocolParams {
    double source_rate_hz = 20e6;
    double ec_inefficiency = 1.16;     // f
    double misalignment_error = 0.015; // e_mis
    double bsm_success = 0.5;          // linear-optics ceiling
    double pair_emission_prob = 0.005; // photon-pair sources emit per pulse
    double uplink_extra_loss_db = 23.0;// turbulence/acquisition excess, uplink only
};

struct KeyRateResult {
    double yield_per_use = 0.0;   // Y
    double qber_x = 0.0;
    double qber_z = 0.0;
    double attempts_per_s = 0.0;
    double secret_bits_per_s = 0.0;
};

/// h(e) = -e log2 e - (1-e) log2(1-e), continuous at the endpoints.
/// Throws DomainError outside [0, 1].
double binary_entropy(double e);

/// Lower bound on the secret fraction per channel use,
/// (Y/2) [1 - h(e_X) - f h(e_Z)], clamped at zero.
double secret_key_rate(double yield, double qber_x, double qber_z, double ec_inefficiency);

inline constexpr std::int64_t kNoCutoff = std::numeric_limits<std::int64_t>::max();

/// Loading statistics of two independent geometric clocks (success
/// probabilities p_a, p_b per use), conditioned on their heralds landing
/// within cutoff_uses of each other:
///   expected_uses     E[max(G_a, G_b) | kept]
///   dephasing_factor  E[exp(-decay_per_use |G_a - G_b|) | kept]
///   success_prob      P(|G_a - G_b| <= cutoff_uses)
/// Evaluated in closed form (exact geometric sums, zero truncation error).
struct WaitStats {
    double expected_uses = 1.0;
    double dephasing_factor = 1.0;
    double success_prob = 1.0;
};

WaitStats geometric_wait_stats(double p_a, double p_b, std::int64_t cutoff_uses,
                               double decay_per_use);

/// Entanglement-based benchmark without memories: pair source on the
/// satellite above the midpoint, both photons sent down.
KeyRateResult e91_rate(double ground_distance_km, const geometry::OrbitConfig& orbit,
                       const geometry::EarthModel& earth, const channel::ChannelStack& stack,
                       const ProtocolParams& params);

/// BB84 photons travel up into a pair of heralded memories; the BSM fires
/// as soon as both are loaded. Single memory pair, no classical-wait
/// bottleneck, dephasing while one memory waits for the other.
KeyRateResult uplink_ma_rate(double ground_distance_km, const geometry::OrbitConfig& orbit,
                             const geometry::EarthModel& earth,
                             const channel::ChannelStack& stack, const MemoryModel& memory,
                             const ProtocolParams& params);

/// Memory-photon pairs fired down to both parties; heralding rides on the
/// classical round trip, so the slot rate is N*m per round and the storage
/// cutoff is counted in rounds.
KeyRateResult downlink_ma_rate(double ground_distance_km, const geometry::OrbitConfig& orbit,
                               const geometry::EarthModel& earth,
                               const channel::ChannelStack& stack, const MemoryModel& memory,
                               const ProtocolParams& params);

enum class Protocol { Uplink, Downlink };

/// Secret rate over a (dephasing time, combined memory efficiency) grid at
/// fixed ground distance, row-major with tau as the slow axis. Cells where
/// no key survives hold zero; the grid never throws.
struct RateMap {
    std::vector<double> tau_s;
    std::vector<double> eta_mem;
    std::vector<double> rate_bits_per_s;  // tau-major

    double at(std::size_t tau_index, std::size_t eta_index) const {
        return rate_bits_per_s[tau_index * eta_mem.size() + eta_index];
    }
};

RateMap rate_map(Protocol protocol, double ground_distance_km,
                 const geometry::OrbitConfig& orbit, const geometry::EarthModel& earth,
                 const channel::ChannelStack& stack, const MemoryModel& memory,
                 const ProtocolParams& params, const std::vector<double>& tau_values,
                 const std::vector<double>& eta_values);

}  // namespace qlink::maqkd
