#pragma once

#include <cstdint>
#include <vector>

#include "qlink/channel.hpp"
#include "qlink/geometry.hpp"

namespace qlink::repeater {

/// Knobs of a first-generation repeater chain. Memory read and write
/// efficiencies are stored separately; the combined memory efficiency is
/// their product, so set_memory_efficiency() splits a combined value into
/// equal read/write factors.
struct RepeaterConfig {
    int nesting_level = 3;
    double source_rate_hz = 20e6;
    double source_efficiency = 1.0;
    double pair_probability = 0.01;  // DLCZ photon-pair emission per attempt
    double qnd_efficiency = 0.5;
    double write_efficiency = 0.9486832980505138;  // sqrt(0.9)
    double read_efficiency = 0.9486832980505138;
    channel::DetectorModel detector{0.9, 1e-6};
    std::int64_t temporal_modes = 1;

    double memory_efficiency() const { return write_efficiency * read_efficiency; }
    void set_memory_efficiency(double combined);
    /// Sets read = write = value (combined becomes value^2).
    void set_read_write_efficiency(double value);
};

struct RepeaterResult {
    double total_time_s = 0.0;
    double p0_avg = 0.0;
    double required_storage_s = 0.0;
    double required_modes = 0.0;
};

struct RequiredModes {
    double modes = 0.0;
    std::int64_t modes_ceil = 0;
};

/// Mean over the segments of the product of their two hop transmissivities
/// (the probability that both photons of one pair survive their hops).
double avg_two_photon_transmission(const geometry::ConstellationLayout& layout,
                                   const channel::BeamParams& beam, const channel::Aperture& rx,
                                   const channel::AtmosphereModel& atm);

/// Entanglement distribution time of a DLCZ chain over the layout's
/// segments, with eta_t the transmission of one half-segment hop.
/// Multimode memories divide the single-mode time by the mode count.
RepeaterResult dlcz_time(const RepeaterConfig& cfg, const geometry::ConstellationLayout& layout,
                         double eta_t);

/// Entanglement distribution time of the QND-heralded chain given the
/// average two-photon transmission. When eta_tr_max is supplied the result
/// also carries the temporal mode requirement for the layout's segments.
RepeaterResult qnd_time(const RepeaterConfig& cfg, const geometry::ConstellationLayout& layout,
                        double p0_avg, double eta_tr_max = 0.0);

/// Temporal modes a node memory must hold: photons arriving during one
/// classical heralding interval of the best channel.
RequiredModes required_modes(double source_rate_hz, double source_efficiency,
                             double eta_tr_max, double segment_length_km);

enum class SweepVariable { TotalDistance, Divergence, MemoryEfficiency };

/// Fixed context for an architecture-comparison sweep; the swept variable
/// overrides the matching field point by point.
struct RepeaterSweepConfig {
    RepeaterConfig repeater;
    double total_ground_distance_km = 20000.0;
    geometry::OrbitConfig orbit;
    geometry::EarthModel earth;
    channel::BeamParams beam = channel::BeamParams::from_divergence(780e-9, 1.0, 5e-6);
    channel::Aperture receiver{0.5};
    channel::AtmosphereModel atmosphere;
    std::int64_t multimode_modes = 100;
};

/// One sweep row. Entries are NaN where the point is degenerate (e.g. the
/// end links fall below the horizon).
struct RepeaterSweepPoint {
    double x = 0.0;
    double t_dlcz_single_s = 0.0;
    double t_dlcz_multimode_s = 0.0;
    double t_hybrid_qnd_s = 0.0;
    double t_space_qnd_s = 0.0;
};

/// All four architecture times at a single configuration.
/// MemoryEfficiency sweeps set read = write = value, which is what the
/// efficiency axis of the comparison plots means.
RepeaterSweepPoint architecture_times(const RepeaterSweepConfig& base);

std::vector<RepeaterSweepPoint> sweep_repeater(const RepeaterSweepConfig& base,
                                               SweepVariable variable,
                                               const std::vector<double>& values);

}  // namespace qlink::repeater
