#pragma once

#include "qlink/constants.hpp"
#include "qlink/geometry.hpp"

namespace qlink::channel {

/// Transmitted Gaussian mode. Waist and far-field divergence are coupled
/// through the beam-quality factor,
///
///     divergence = m_squared * wavelength / (pi * waist),
///
/// so construct through one of the factories to keep the pair consistent.
struct BeamParams {
    double wavelength_m = 780e-9;
    double waist_m = 0.0;
    double m_squared = 1.0;
    double divergence_rad = 0.0;

    static BeamParams from_divergence(double wavelength_m, double m_squared,
                                      double divergence_rad);
    static BeamParams from_waist(double wavelength_m, double m_squared, double waist_m);
};

/// Receiving telescope, circular with the given radius.
struct Aperture {
    double radius_m = 0.5;

    double diameter_m() const { return 2.0 * radius_m; }
};

/// One-parameter clear-sky absorption model: the transmissivity looking
/// straight up. Slant paths scale it with csc(elevation).
struct AtmosphereModel {
    double zenith_transmissivity = 0.8;
};

/// Gaussian pointing jitter in the far field. Disabled by default; the
/// loss tables assume perfect tracking unless this is switched on.
struct PointingModel {
    double sigma_rad = 0.0;
    bool enabled = false;
};

/// Sky background reaching the detector through the spectral/temporal
/// filters. All zeros means a dark sky.
struct StrayLightModel {
    double sky_brightness_w_m2_sr_m = 0.0;   // H_sky
    double fov_sr = 0.0;                     // receiver field of view
    double filter_bandwidth_m = 0.0;         // optical filter FWHM
    double window_s = 1e-6;                  // acquisition window
    double center_wavelength_m = 780e-9;     // filter center, sets J -> counts
};

struct DetectorModel {
    double efficiency = 0.9;
    double dark_prob_per_window = 1e-6;
};

/// Per-hop transmissivity decomposition. eta_total is always the product
/// of the three factors; absent effects contribute a factor of 1.
struct ChannelBudget {
    double eta_diffraction = 1.0;
    double eta_atmosphere = 1.0;
    double eta_pointing = 1.0;
    double eta_total = 1.0;
    double stray_counts_per_window = 0.0;
};

/// Waist that realises a requested far-field divergence.
double waist_from_divergence(double wavelength_m, double m_squared, double divergence_rad);

/// 1/e^2 intensity radius after propagating a distance d. The beam-quality
/// factor scales the diffraction term so the far-field half-angle equals
/// the configured divergence.
double beam_radius_at(const BeamParams& beam, double distance_m);

/// Fraction of the beam power captured by the receiver: the encircled
/// energy of a Gaussian of radius w_d over a circular aperture,
/// 1 - exp(-2 a^2 / w_d^2).
double diffraction_efficiency(const BeamParams& beam, double distance_m, const Aperture& rx);

/// Absorption over a slant path: zenith transmissivity to the power
/// csc(elevation). Throws InvalidElevation outside (0, pi/2].
double atmospheric_efficiency(const AtmosphereModel& atm, double elevation_rad);

/// exp(-8 sigma^2 / divergence^2), 1 when tracking is assumed perfect.
double pointing_efficiency(const PointingModel& pointing, const BeamParams& beam);

/// Expected background counts inside one acquisition window.
double stray_counts(const StrayLightModel& stray, const Aperture& rx);

/// Noise-click probability per detection window: dark counts plus stray
/// background, clamped into [0, 1].
double noise_probability_per_window(const DetectorModel& detector, double stray_counts_per_window);

/// Full budget for one hop. Space-ground hops see diffraction, atmosphere
/// and (if enabled) pointing; inter-satellite hops skip the atmosphere.
ChannelBudget hop_transmission(const geometry::LinkGeometry& link, const BeamParams& beam,
                               const Aperture& rx, const AtmosphereModel& atm,
                               const PointingModel& pointing,
                               const StrayLightModel& stray = StrayLightModel{});

/// Everything a protocol needs to price one optical link.
struct ChannelStack {
    BeamParams beam = BeamParams::from_divergence(780e-9, 1.0, 10e-6);
    Aperture receiver;
    AtmosphereModel atmosphere;
    PointingModel pointing;
    StrayLightModel stray;
    DetectorModel detector;
};

}  // namespace qlink::channel
