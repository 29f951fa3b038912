#include "doctest.h"

#include <cmath>

#include "qlink/channel.hpp"
#include "qlink/errors.hpp"
#include "oracles.hpp"

using namespace qlink;
using namespace qlink::channel;

namespace {
const BeamParams kBeam5 = BeamParams::from_divergence(780e-9, 1.0, 5e-6);
const Aperture kRx{0.5};
const AtmosphereModel kAtm{};
constexpr double kDeg = constants::pi / 180.0;
}  // namespace

TEST_CASE("waist from divergence") {
    CHECK(waist_from_divergence(780e-9, 1.0, 5e-6) == doctest::Approx(0.049656342).epsilon(1e-8));
    CHECK(waist_from_divergence(780e-9, 1.0, 10e-6) == doctest::Approx(0.024828171).epsilon(1e-8));
    // doubling M^2 at fixed divergence doubles the waist
    CHECK(waist_from_divergence(780e-9, 2.0, 5e-6) ==
          doctest::Approx(2.0 * waist_from_divergence(780e-9, 1.0, 5e-6)).epsilon(1e-15));
    CHECK_THROWS_AS(waist_from_divergence(780e-9, 0.5, 5e-6), DomainError);
}

TEST_CASE("beam radius propagation") {
    CHECK(beam_radius_at(kBeam5, 0.0) == doctest::Approx(kBeam5.waist_m).epsilon(1e-15));

    const double rayleigh =
        constants::pi * kBeam5.waist_m * kBeam5.waist_m / (kBeam5.m_squared * kBeam5.wavelength_m);
    CHECK(beam_radius_at(kBeam5, rayleigh) ==
          doctest::Approx(std::sqrt(2.0) * kBeam5.waist_m).epsilon(1e-12));

    // far field: within 0.1% of divergence * distance at 1000 km
    CHECK(beam_radius_at(kBeam5, 1e6) == doctest::Approx(5e-6 * 1e6).epsilon(1e-3));

    // a degraded beam with the same divergence has the same far field
    const BeamParams degraded = BeamParams::from_divergence(780e-9, 4.0, 5e-6);
    CHECK(beam_radius_at(degraded, 1e6) == doctest::Approx(5e-6 * 1e6).epsilon(1e-3));
}

TEST_CASE("diffraction efficiency against the quadrature oracle") {
    SUBCASE("named points") {
        // huge aperture captures everything
        CHECK(diffraction_efficiency(kBeam5, 500e3, Aperture{5000.0}) ==
              doctest::Approx(1.0).epsilon(1e-12));
        // frozen: a = 0.5 m, d = 500 km at 5 urad
        CHECK(diffraction_efficiency(kBeam5, 500e3, kRx) ==
              doctest::Approx(0.076854).epsilon(1e-4));
        // w = a sqrt(2) makes the exponent exactly 1
        const double w_target = 0.5 * std::sqrt(2.0);
        const double d = w_target / 5e-6;  // far-field distance giving that radius
        const double eta = diffraction_efficiency(kBeam5, d, kRx);
        CHECK(eta == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-4));
    }
    SUBCASE("quadrature agreement over a wide w/a grid") {
        for (int i = 0; i < 20; ++i) {
            const double ratio = 0.1 * std::pow(1000.0, i / 19.0);  // w/a in [0.1, 100]
            const double w = ratio * kRx.radius_m;
            const double d = w / 5e-6;  // far field
            const double w_actual = beam_radius_at(kBeam5, d);
            const double expected = oracles::encircled_power_quadrature(w_actual, kRx.radius_m);
            CHECK(diffraction_efficiency(kBeam5, d, kRx) ==
                  doctest::Approx(expected).epsilon(0).scale(1.0).epsilon(1e-9));
        }
    }
    SUBCASE("monotonicity") {
        double previous = 1.0;
        for (double d = 1e5; d <= 3e6; d += 1e5) {
            const double eta = diffraction_efficiency(kBeam5, d, kRx);
            CHECK(eta < previous);
            previous = eta;
        }
        // wider divergence loses more at fixed distance
        const BeamParams wide = BeamParams::from_divergence(780e-9, 1.0, 10e-6);
        CHECK(diffraction_efficiency(wide, 1e6, kRx) < diffraction_efficiency(kBeam5, 1e6, kRx));
        // bigger aperture catches more
        CHECK(diffraction_efficiency(kBeam5, 1e6, Aperture{0.6}) >
              diffraction_efficiency(kBeam5, 1e6, kRx));
    }
}

TEST_CASE("atmospheric efficiency") {
    CHECK(atmospheric_efficiency(kAtm, constants::pi / 2) == doctest::Approx(0.8).epsilon(1e-15));
    // csc(30 deg) = 2 exactly
    CHECK(atmospheric_efficiency(kAtm, constants::pi / 6) == doctest::Approx(0.64).epsilon(1e-14));
    CHECK(atmospheric_efficiency(kAtm, 0.001) < 1e-80);
    CHECK_THROWS_AS(atmospheric_efficiency(kAtm, 0.0), InvalidElevation);
    CHECK_THROWS_AS(atmospheric_efficiency(kAtm, -0.3), InvalidElevation);
    CHECK_THROWS_AS(atmospheric_efficiency(kAtm, 2.0), InvalidElevation);

    double previous = 0.0;
    for (double deg = 5.0; deg <= 90.0; deg += 5.0) {
        const double eta = atmospheric_efficiency(kAtm, deg * kDeg);
        CHECK(eta > previous);
        previous = eta;
    }
}

TEST_CASE("pointing efficiency") {
    PointingModel off{1e-6, false};
    CHECK(pointing_efficiency(off, kBeam5) == 1.0);

    PointingModel zero{0.0, true};
    CHECK(pointing_efficiency(zero, kBeam5) == 1.0);

    // sigma = divergence / sqrt(8) puts the exponent at 1
    PointingModel critical{5e-6 / std::sqrt(8.0), true};
    CHECK(pointing_efficiency(critical, kBeam5) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

    const BeamParams beam10 = BeamParams::from_divergence(780e-9, 1.0, 10e-6);
    PointingModel micro{1e-6, true};
    CHECK(pointing_efficiency(micro, beam10) == doctest::Approx(std::exp(-0.08)).epsilon(1e-12));
}

TEST_CASE("stray counts") {
    StrayLightModel stray;
    stray.sky_brightness_w_m2_sr_m = 1e-3;
    stray.fov_sr = 1e-10;
    stray.filter_bandwidth_m = 1e-9;
    stray.window_s = 0.0;
    CHECK(stray_counts(stray, kRx) == 0.0);

    stray.window_s = 1e-6;
    const double base = stray_counts(stray, kRx);
    stray.filter_bandwidth_m *= 2.0;
    CHECK(stray_counts(stray, kRx) == doctest::Approx(2.0 * base).epsilon(1e-12));

    // photon count equals optical energy times lambda/(h c) = 3.9266e18 1/J
    StrayLightModel unit;
    unit.fov_sr = 1.0;
    unit.filter_bandwidth_m = 1.0;
    unit.window_s = 1.0;
    const double area = std::pow(constants::pi * kRx.diameter_m() / 2.0, 2.0);
    unit.sky_brightness_w_m2_sr_m = 2.5467e-19 / area;
    CHECK(stray_counts(unit, kRx) == doctest::Approx(1.0000).epsilon(1e-4));
}

TEST_CASE("hop transmission") {
    SUBCASE("zero-length hop with a huge aperture is lossless") {
        geometry::LinkGeometry link{geometry::LinkKind::SpaceGround, 0.0, constants::pi / 2, 0.0};
        const auto budget = hop_transmission(link, kBeam5, Aperture{100.0}, kAtm, PointingModel{});
        CHECK(budget.eta_diffraction == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(budget.eta_atmosphere == doctest::Approx(0.8));
        CHECK(budget.eta_total == doctest::Approx(0.8).epsilon(1e-12));
    }
    SUBCASE("space-ground fig-3a end hop") {
        geometry::LinkGeometry link{geometry::LinkKind::SpaceGround, 1348.0, 11.5 * kDeg, 0.0};
        const auto budget = hop_transmission(link, kBeam5, kRx, kAtm, PointingModel{});
        CHECK(budget.eta_diffraction == doctest::Approx(0.010946).epsilon(1e-3));
        CHECK(budget.eta_atmosphere == doctest::Approx(0.326523).epsilon(1e-3));
        CHECK(budget.eta_total == doctest::Approx(3.574e-3).epsilon(1e-3));
    }
    SUBCASE("inter-satellite hop skips the atmosphere") {
        geometry::LinkGeometry link{geometry::LinkKind::InterSatellite, 1326.0, 0.0, 0.0};
        const auto budget = hop_transmission(link, kBeam5, kRx, kAtm, PointingModel{});
        CHECK(budget.eta_atmosphere == 1.0);
        CHECK(budget.eta_total == doctest::Approx(0.011310).epsilon(1e-3));
    }
    SUBCASE("the atmosphere factor is the only difference between hop kinds") {
        for (double d : {500.0, 1000.0, 1500.0}) {
            geometry::LinkGeometry ground{geometry::LinkKind::SpaceGround, d, 0.4, 0.0};
            geometry::LinkGeometry space{geometry::LinkKind::InterSatellite, d, 0.0, 0.0};
            const auto bg = hop_transmission(ground, kBeam5, kRx, kAtm, PointingModel{});
            const auto bs = hop_transmission(space, kBeam5, kRx, kAtm, PointingModel{});
            CHECK(bg.eta_total ==
                  doctest::Approx(bs.eta_total * atmospheric_efficiency(kAtm, 0.4)).epsilon(1e-12));
        }
    }
    SUBCASE("every factor stays in [0, 1] and bounds the total") {
        for (double d : {1.0, 700.0, 2200.0}) {
            geometry::LinkGeometry link{geometry::LinkKind::SpaceGround, d, 0.3, 0.0};
            const auto b = hop_transmission(link, kBeam5, kRx, kAtm, PointingModel{1e-6, true});
            for (double eta : {b.eta_diffraction, b.eta_atmosphere, b.eta_pointing, b.eta_total}) {
                CHECK(eta >= 0.0);
                CHECK(eta <= 1.0);
            }
            CHECK(b.eta_total <= b.eta_diffraction);
            CHECK(b.eta_total <= b.eta_atmosphere);
            CHECK(b.eta_total <= b.eta_pointing);
        }
    }
    SUBCASE("invalid elevation propagates") {
        geometry::LinkGeometry link{geometry::LinkKind::SpaceGround, 500.0, 0.0, 0.0};
        CHECK_THROWS_AS(hop_transmission(link, kBeam5, kRx, kAtm, PointingModel{}),
                        InvalidElevation);
    }
}

TEST_CASE("noise probability per window") {
    DetectorModel det{0.7, 1e-6};
    CHECK(noise_probability_per_window(det, 0.0) == doctest::Approx(1e-6));
    CHECK(noise_probability_per_window(det, 2e-6) == doctest::Approx(3e-6));
    CHECK(noise_probability_per_window(det, 5.0) == 1.0);
}
