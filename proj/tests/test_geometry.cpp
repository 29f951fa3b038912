#include "doctest.h"

#include <cmath>

#include "qlink/errors.hpp"
#include "qlink/geometry.hpp"
#include "oracles.hpp"

using namespace qlink;
using namespace qlink::geometry;

namespace {
const EarthModel kEarth{};
const OrbitConfig kLeo{400.0};
}  // namespace

TEST_CASE("slant range: zenith, oracle values, monotonicity") {
    CHECK(slant_range(0.0, kLeo, kEarth) == doctest::Approx(400.0).epsilon(1e-12));

    // frozen from the Cartesian oracle
    CHECK(slant_range(560.0, kLeo, kEarth) == doctest::Approx(702.192770).epsilon(1e-8));
    CHECK(slant_range(1250.0, kLeo, kEarth) == doctest::Approx(1347.323467).epsilon(1e-8));

    double previous = slant_range(0.0, kLeo, kEarth);
    for (double arc = 50.0; arc <= 4000.0; arc += 50.0) {
        const double d = slant_range(arc, kLeo, kEarth);
        CHECK(d > previous);
        previous = d;
    }
}

TEST_CASE("elevation angle: zenith, oracle values, horizon error") {
    CHECK(elevation_angle(0.0, kLeo, kEarth) == doctest::Approx(constants::pi / 2).epsilon(1e-15));
    CHECK(elevation_angle(560.0, kLeo, kEarth) * 180.0 / constants::pi ==
          doctest::Approx(32.168978).epsilon(1e-6));

    // strictly decreasing until the horizon
    double previous = elevation_angle(0.0, kLeo, kEarth);
    for (double arc = 50.0; arc <= 2100.0; arc += 50.0) {
        const double theta = elevation_angle(arc, kLeo, kEarth);
        CHECK(theta < previous);
        previous = theta;
    }

    // (R+h) cos(arc/R) <= R: the link stops existing
    const double horizon_arc = kEarth.radius_km * std::acos(kEarth.radius_km / 6771.0);
    CHECK_THROWS_AS(elevation_angle(horizon_arc + 1.0, kLeo, kEarth), BelowHorizon);
    CHECK_THROWS_AS(elevation_angle(8000.0, kLeo, kEarth), BelowHorizon);
}

TEST_CASE("intersat range: degenerate and oracle values") {
    CHECK(intersat_range(0.0, kLeo, kEarth) == 0.0);
    CHECK(intersat_range(1250.0, kLeo, kEarth) == doctest::Approx(1326.350810).epsilon(1e-8));
    CHECK(intersat_range(2500.0, kLeo, kEarth) == doctest::Approx(2639.947371).epsilon(1e-8));
}

TEST_CASE("range operations agree with the 3D Cartesian oracle") {
    for (double arc = 0.0; arc <= 3500.0; arc += 137.0) {
        for (double h : {400.0, 550.0, 1200.0}) {
            const OrbitConfig orbit{h};
            CHECK(slant_range(arc, orbit, kEarth) ==
                  doctest::Approx(oracles::cartesian_slant(arc, h, kEarth.radius_km))
                      .epsilon(1e-9));
            CHECK(intersat_range(arc, orbit, kEarth) ==
                  doctest::Approx(oracles::cartesian_intersat(arc, h, kEarth.radius_km))
                      .epsilon(1e-9));
            const double reference = oracles::cartesian_elevation(arc, h, kEarth.radius_km);
            if (reference > 1e-3) {
                CHECK(elevation_angle(arc, orbit, kEarth) ==
                      doctest::Approx(reference).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("chord never exceeds the arc along the orbit shell") {
    for (double arc = 10.0; arc <= 5000.0; arc += 230.0) {
        const double shell_arc = arc * (kEarth.radius_km + kLeo.altitude_km) / kEarth.radius_km;
        CHECK(intersat_range(arc, kLeo, kEarth) <= shell_arc);
    }
}

TEST_CASE("arc_from_slant inverts slant_range") {
    for (double arc : {0.0, 120.0, 560.0, 1250.0, 1900.0}) {
        const double d = slant_range(arc, kLeo, kEarth);
        CHECK(arc_from_slant(d, kLeo, kEarth) == doctest::Approx(arc).epsilon(1e-9));
    }
    CHECK_THROWS_AS(arc_from_slant(100.0, kLeo, kEarth), DomainError);  // below altitude
}

TEST_CASE("los midpoint geometry") {
    SUBCASE("zero distance puts both links at zenith") {
        const auto [a, b] = los_midpoint_geometry(0.0, kLeo, kEarth);
        CHECK(a.path_length_km == doctest::Approx(400.0));
        CHECK(a.elevation_rad == doctest::Approx(constants::pi / 2));
        CHECK(b.path_length_km == a.path_length_km);
    }
    SUBCASE("1120 km split") {
        const auto [a, b] = los_midpoint_geometry(1120.0, kLeo, kEarth);
        CHECK(a.path_length_km == doctest::Approx(702.192770).epsilon(1e-8));
        CHECK(a.elevation_rad * 180.0 / constants::pi == doctest::Approx(32.168978).epsilon(1e-6));
        CHECK(a.ground_arc_km == doctest::Approx(560.0));
    }
    SUBCASE("2000 km split, frozen from the Cartesian oracle") {
        const auto [a, b] = los_midpoint_geometry(2000.0, kLeo, kEarth);
        CHECK(a.ground_arc_km == doctest::Approx(1000.0));
        CHECK(a.path_length_km ==
              doctest::Approx(oracles::cartesian_slant(1000.0, 400.0, kEarth.radius_km))
                  .epsilon(1e-12));
        CHECK(a.path_length_km == doctest::Approx(1104.809628).epsilon(1e-8));
    }
}

TEST_CASE("constellation layout") {
    SUBCASE("fullspace n=3 over 20000 km") {
        const auto layout =
            constellation_layout(20000.0, 3, kLeo, kEarth, Architecture::FullSpace);
        CHECK(layout.hops.size() == 16);
        CHECK(layout.segment_length_km == doctest::Approx(2500.0));
        CHECK(layout.satellite_count() == 15);
        int ground = 0, space = 0;
        double arc_sum = 0.0;
        for (const auto& hop : layout.hops) {
            arc_sum += hop.ground_arc_km;
            CHECK(hop.ground_arc_km == doctest::Approx(1250.0));
            (hop.kind == LinkKind::SpaceGround ? ground : space) += 1;
        }
        CHECK(ground == 2);
        CHECK(space == 14);
        CHECK(arc_sum == doctest::Approx(20000.0).epsilon(1e-12));
        // the two ends are the space-ground hops
        CHECK(layout.hops.front().kind == LinkKind::SpaceGround);
        CHECK(layout.hops.back().kind == LinkKind::SpaceGround);
    }
    SUBCASE("hybrid n=3 over 20000 km is all space-ground") {
        const auto layout =
            constellation_layout(20000.0, 3, kLeo, kEarth, Architecture::HybridGround);
        CHECK(layout.hops.size() == 16);
        for (const auto& hop : layout.hops) {
            CHECK(hop.kind == LinkKind::SpaceGround);
            CHECK(hop.ground_arc_km == doctest::Approx(1250.0));
        }
    }
    SUBCASE("n=0 degenerates to the two end links") {
        const auto layout = constellation_layout(1000.0, 0, kLeo, kEarth, Architecture::FullSpace);
        CHECK(layout.hops.size() == 2);
        CHECK(layout.segment_length_km == doctest::Approx(1000.0));
        for (const auto& hop : layout.hops) {
            CHECK(hop.kind == LinkKind::SpaceGround);
            CHECK(hop.ground_arc_km == doctest::Approx(500.0));
        }
    }
    SUBCASE("hop arcs always sum to L") {
        for (int n = 0; n <= 5; ++n) {
            const auto layout =
                constellation_layout(8000.0, n, kLeo, kEarth, Architecture::FullSpace);
            double arc_sum = 0.0;
            for (const auto& hop : layout.hops) arc_sum += hop.ground_arc_km;
            CHECK(arc_sum == doctest::Approx(8000.0).epsilon(1e-12));
        }
    }
    SUBCASE("end links below the horizon propagate") {
        CHECK_THROWS_AS(constellation_layout(40000.0, 0, kLeo, kEarth, Architecture::FullSpace),
                        BelowHorizon);
    }
}
