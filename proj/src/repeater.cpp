#include "qlink/repeater.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qlink/errors.hpp"

namespace qlink::repeater {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double hop_eta(const geometry::LinkGeometry& link, const channel::BeamParams& beam,
               const channel::Aperture& rx, const channel::AtmosphereModel& atm) {
    const channel::PointingModel no_pointing{};
    return channel::hop_transmission(link, beam, rx, atm, no_pointing).eta_total;
}

}  // namespace

void RepeaterConfig::set_memory_efficiency(double combined) {
    if (!(combined >= 0.0 && combined <= 1.0)) {
        throw DomainError("memory efficiency must lie in [0, 1]");
    }
    write_efficiency = read_efficiency = std::sqrt(combined);
}

void RepeaterConfig::set_read_write_efficiency(double value) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw DomainError("read/write efficiency must lie in [0, 1]");
    }
    write_efficiency = read_efficiency = value;
}

double avg_two_photon_transmission(const geometry::ConstellationLayout& layout,
                                   const channel::BeamParams& beam, const channel::Aperture& rx,
                                   const channel::AtmosphereModel& atm) {
    const std::int64_t segments = layout.segment_count();
    double sum = 0.0;
    for (std::int64_t seg = 0; seg < segments; ++seg) {
        const auto& left = layout.hops[static_cast<std::size_t>(2 * seg)];
        const auto& right = layout.hops[static_cast<std::size_t>(2 * seg + 1)];
        sum += hop_eta(left, beam, rx, atm) * hop_eta(right, beam, rx, atm);
    }
    return sum / static_cast<double>(segments);
}

RepeaterResult dlcz_time(const RepeaterConfig& cfg, const geometry::ConstellationLayout& layout,
                         double eta_t) {
    const double eta_d = cfg.detector.efficiency;
    const double eta_m = cfg.memory_efficiency();
    if (!(cfg.pair_probability > 0.0) || !(eta_t > 0.0) || !(eta_m * eta_d > 0.0)) {
        throw DegenerateInput("DLCZ time diverges: pair probability, channel transmission "
                              "and memory*detector efficiency must all be > 0");
    }

    const int n = layout.nesting_level;
    const double md = eta_m * eta_d;
    double product = 1.0;
    for (int k = 1; k <= n; ++k) {
        const double two_k = std::ldexp(1.0, k);
        product *= two_k - (two_k - 1.0) * md;
    }
    double time_s = std::pow(3.0, n + 1) * (layout.segment_length_km / constants::speed_of_light_km_s) *
                    product /
                    (eta_d * eta_t * cfg.pair_probability * std::pow(md, n + 2));
    if (cfg.temporal_modes > 1) {
        time_s /= static_cast<double>(cfg.temporal_modes);
    }

    RepeaterResult result;
    result.total_time_s = time_s;
    result.p0_avg = eta_t;
    result.required_storage_s = time_s;
    return result;
}

RepeaterResult qnd_time(const RepeaterConfig& cfg, const geometry::ConstellationLayout& layout,
                        double p0_avg, double eta_tr_max) {
    const double swap = (2.0 / 3.0) * cfg.read_efficiency * cfg.read_efficiency *
                        cfg.detector.efficiency * cfg.detector.efficiency / 2.0;
    const double swap_chain = std::pow(swap, layout.nesting_level);
    const double rate = cfg.source_rate_hz * cfg.source_efficiency * p0_avg *
                        cfg.qnd_efficiency * cfg.qnd_efficiency * cfg.write_efficiency *
                        cfg.write_efficiency * swap_chain;
    if (!(rate > 0.0)) {
        throw DegenerateInput("QND repeater rate is zero: every factor of the rate "
                              "product must be > 0");
    }

    RepeaterResult result;
    result.total_time_s = 1.0 / rate;
    result.p0_avg = p0_avg;
    result.required_storage_s = result.total_time_s;
    if (eta_tr_max > 0.0) {
        result.required_modes = required_modes(cfg.source_rate_hz, cfg.source_efficiency,
                                               eta_tr_max, layout.segment_length_km)
                                    .modes;
    }
    return result;
}

RequiredModes required_modes(double source_rate_hz, double source_efficiency,
                             double eta_tr_max, double segment_length_km) {
    if (!(source_rate_hz >= 0.0) || !(source_efficiency >= 0.0) || !(eta_tr_max >= 0.0) ||
        !(segment_length_km >= 0.0)) {
        throw DomainError("required_modes arguments must be >= 0");
    }
    RequiredModes out;
    out.modes = source_rate_hz * source_efficiency * eta_tr_max * segment_length_km /
                constants::speed_of_light_km_s;
    out.modes_ceil = static_cast<std::int64_t>(std::ceil(out.modes));
    return out;
}

RepeaterSweepPoint architecture_times(const RepeaterSweepConfig& base) {
    RepeaterSweepPoint point;
    point.x = kNan;
    point.t_dlcz_single_s = point.t_dlcz_multimode_s = kNan;
    point.t_hybrid_qnd_s = point.t_space_qnd_s = kNan;

    const auto space = geometry::constellation_layout(base.total_ground_distance_km,
                                                      base.repeater.nesting_level, base.orbit,
                                                      base.earth, geometry::Architecture::FullSpace);
    const auto hybrid = geometry::constellation_layout(
        base.total_ground_distance_km, base.repeater.nesting_level, base.orbit, base.earth,
        geometry::Architecture::HybridGround);

    // DLCZ nodes use the same half-segment geometry; hops[1] is interior
    // for n >= 1 and the end hop in the degenerate n = 0 chain.
    const double eta_t = hop_eta(space.hops[1], base.beam, base.receiver, base.atmosphere);

    RepeaterConfig single = base.repeater;
    single.temporal_modes = 1;
    point.t_dlcz_single_s = dlcz_time(single, space, eta_t).total_time_s;

    RepeaterConfig multi = base.repeater;
    multi.temporal_modes = base.multimode_modes;
    point.t_dlcz_multimode_s = dlcz_time(multi, space, eta_t).total_time_s;

    const double p0_space =
        avg_two_photon_transmission(space, base.beam, base.receiver, base.atmosphere);
    const double p0_hybrid =
        avg_two_photon_transmission(hybrid, base.beam, base.receiver, base.atmosphere);
    point.t_space_qnd_s = qnd_time(base.repeater, space, p0_space).total_time_s;
    point.t_hybrid_qnd_s = qnd_time(base.repeater, hybrid, p0_hybrid).total_time_s;
    return point;
}

std::vector<RepeaterSweepPoint> sweep_repeater(const RepeaterSweepConfig& base,
                                               SweepVariable variable,
                                               const std::vector<double>& values) {
    std::vector<RepeaterSweepPoint> rows;
    rows.reserve(values.size());
    for (const double x : values) {
        RepeaterSweepConfig cfg = base;
        switch (variable) {
            case SweepVariable::TotalDistance:
                cfg.total_ground_distance_km = x;
                break;
            case SweepVariable::Divergence:
                cfg.beam = channel::BeamParams::from_divergence(base.beam.wavelength_m,
                                                                base.beam.m_squared, x);
                break;
            case SweepVariable::MemoryEfficiency:
                cfg.repeater.set_read_write_efficiency(x);
                break;
        }
        RepeaterSweepPoint point;
        try {
            point = architecture_times(cfg);
        } catch (const Error&) {
            // keep the sweep total; the row records the failure as NaN
        }
        point.x = x;
        rows.push_back(point);
    }
    return rows;
}

}  // namespace qlink::repeater
