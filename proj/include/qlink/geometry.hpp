#pragma once

#include <cstdint>
#include <vector>

#include "qlink/constants.hpp"

namespace qlink::geometry {

/// Spherical Earth. The mean radius is used everywhere; no oblateness,
/// no refraction.
struct EarthModel {
    double radius_km = constants::mean_earth_radius_km;
};

/// Circular-orbit shell: every satellite of a scenario sits at this altitude.
struct OrbitConfig {
    double altitude_km = 400.0;
};

enum class LinkKind { SpaceGround, InterSatellite };

/// One optical hop of a scenario. `elevation_rad` is defined for
/// SpaceGround links only (NaN otherwise). `ground_arc_km` keeps the
/// surface arc the hop spans so layouts can be audited against the total
/// ground distance.
struct LinkGeometry {
    LinkKind kind = LinkKind::SpaceGround;
    double path_length_km = 0.0;
    double elevation_rad = 0.0;
    double ground_arc_km = 0.0;
};

enum class Architecture { FullSpace, HybridGround };

/// Static snapshot of a repeater constellation over a ground track of
/// length L split into 2^n segments. Each segment contributes two hops
/// (pair source at the segment midpoint firing towards both boundaries),
/// so hops.size() == 2^(n+1) and the hop arcs sum back to L.
struct ConstellationLayout {
    int nesting_level = 0;
    double total_ground_distance_km = 0.0;
    double segment_length_km = 0.0;
    Architecture architecture = Architecture::FullSpace;
    std::vector<LinkGeometry> hops;

    std::int64_t segment_count() const { return std::int64_t{1} << nesting_level; }
    std::int64_t satellite_count() const;
};

/// Straight-line distance from a ground point to a satellite whose
/// sub-satellite point lies `arc_km` away along the surface.
double slant_range(double arc_km, const OrbitConfig& orbit, const EarthModel& earth);

/// Elevation of that satellite above the local horizon. pi/2 at arc 0.
/// Throws BelowHorizon once the satellite drops to or under the horizon
/// plane, i.e. (R+h) cos(arc/R) <= R.
double elevation_angle(double arc_km, const OrbitConfig& orbit, const EarthModel& earth);

/// Chord between two satellites on the same shell separated by `arc_km`
/// of ground track.
double intersat_range(double arc_km, const OrbitConfig& orbit, const EarthModel& earth);

/// Ground arc implied by a slant range (inverse of slant_range).
/// Throws DomainError when no geometry reproduces `slant_km`.
double arc_from_slant(double slant_km, const OrbitConfig& orbit, const EarthModel& earth);

/// The two symmetric space-ground links of a satellite parked above the
/// midpoint between two ground stations `total_ground_km` apart.
std::pair<LinkGeometry, LinkGeometry> los_midpoint_geometry(double total_ground_km,
                                                            const OrbitConfig& orbit,
                                                            const EarthModel& earth);

/// Build the hop list for a repeater chain. FullSpace keeps every interior
/// hop between satellites and touches the atmosphere only at the two end
/// stations; HybridGround lowers every memory node to the ground so all
/// hops are space-ground.
ConstellationLayout constellation_layout(double total_ground_km, int nesting_level,
                                         const OrbitConfig& orbit, const EarthModel& earth,
                                         Architecture architecture);

}  // namespace qlink::geometry
