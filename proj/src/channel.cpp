#include "qlink/channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qlink/errors.hpp"

namespace qlink::channel {

namespace {

void require_beam_inputs(double wavelength_m, double m_squared, double third, const char* name) {
    if (!(wavelength_m > 0.0) || !(m_squared >= 1.0) || !(third > 0.0)) {
        throw DomainError(std::string("beam parameters require wavelength > 0, M^2 >= 1, ") +
                          name + " > 0");
    }
}

}  // namespace

BeamParams BeamParams::from_divergence(double wavelength_m, double m_squared,
                                       double divergence_rad) {
    require_beam_inputs(wavelength_m, m_squared, divergence_rad, "divergence");
    BeamParams beam;
    beam.wavelength_m = wavelength_m;
    beam.m_squared = m_squared;
    beam.divergence_rad = divergence_rad;
    beam.waist_m = waist_from_divergence(wavelength_m, m_squared, divergence_rad);
    return beam;
}

BeamParams BeamParams::from_waist(double wavelength_m, double m_squared, double waist_m) {
    require_beam_inputs(wavelength_m, m_squared, waist_m, "waist");
    BeamParams beam;
    beam.wavelength_m = wavelength_m;
    beam.m_squared = m_squared;
    beam.waist_m = waist_m;
    beam.divergence_rad = m_squared * wavelength_m / (constants::pi * waist_m);
    return beam;
}

double waist_from_divergence(double wavelength_m, double m_squared, double divergence_rad) {
    require_beam_inputs(wavelength_m, m_squared, divergence_rad, "divergence");
    return m_squared * wavelength_m / (constants::pi * divergence_rad);
}

double beam_radius_at(const BeamParams& beam, double distance_m) {
    if (!(distance_m >= 0.0)) {
        throw DomainError("propagation distance must be >= 0");
    }
    const double w0 = beam.waist_m;
    const double spread = beam.m_squared * beam.wavelength_m * distance_m /
                          (constants::pi * w0 * w0);
    return w0 * std::sqrt(1.0 + spread * spread);
}

double diffraction_efficiency(const BeamParams& beam, double distance_m, const Aperture& rx) {
    const double w = beam_radius_at(beam, distance_m);
    const double a = rx.radius_m;
    return -std::expm1(-2.0 * a * a / (w * w));
}

double atmospheric_efficiency(const AtmosphereModel& atm, double elevation_rad) {
    // small slack above pi/2 absorbs floating noise from upstream geometry
    if (!(elevation_rad > 0.0) || elevation_rad > constants::pi / 2.0 + 1e-12) {
        throw InvalidElevation("elevation must lie in (0, pi/2], got " +
                               std::to_string(elevation_rad) + " rad");
    }
    const double theta = std::min(elevation_rad, constants::pi / 2.0);
    const double cosec = 1.0 / std::sin(theta);
    return std::pow(atm.zenith_transmissivity, cosec);
}

double pointing_efficiency(const PointingModel& pointing, const BeamParams& beam) {
    if (!pointing.enabled || pointing.sigma_rad == 0.0) {
        return 1.0;
    }
    const double ratio = pointing.sigma_rad / beam.divergence_rad;
    return std::exp(-8.0 * ratio * ratio);
}

double stray_counts(const StrayLightModel& stray, const Aperture& rx) {
    const double photon_per_joule =
        stray.center_wavelength_m / (constants::planck_j_s * constants::speed_of_light_m_s);
    const double half_pi_d = constants::pi * rx.diameter_m() / 2.0;
    return photon_per_joule * stray.sky_brightness_w_m2_sr_m * stray.fov_sr *
           half_pi_d * half_pi_d * stray.filter_bandwidth_m * stray.window_s;
}

double noise_probability_per_window(const DetectorModel& detector,
                                    double stray_counts_per_window) {
    return std::clamp(detector.dark_prob_per_window + stray_counts_per_window, 0.0, 1.0);
}

ChannelBudget hop_transmission(const geometry::LinkGeometry& link, const BeamParams& beam,
                               const Aperture& rx, const AtmosphereModel& atm,
                               const PointingModel& pointing, const StrayLightModel& stray) {
    ChannelBudget budget;
    budget.eta_diffraction = diffraction_efficiency(beam, link.path_length_km * 1e3, rx);
    if (link.kind == geometry::LinkKind::SpaceGround) {
        budget.eta_atmosphere = atmospheric_efficiency(atm, link.elevation_rad);
    }
    budget.eta_pointing = pointing_efficiency(pointing, beam);
    budget.eta_total = budget.eta_diffraction * budget.eta_atmosphere * budget.eta_pointing;
    budget.stray_counts_per_window = stray_counts(stray, rx);
    return budget;
}

}  // namespace qlink::channel
