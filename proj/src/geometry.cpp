#include "qlink/geometry.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qlink/errors.hpp"

namespace qlink::geometry {

namespace {

void require_nonnegative_arc(double arc_km) {
    if (!(arc_km >= 0.0)) {
        throw DomainError("ground arc must be >= 0, got " + std::to_string(arc_km));
    }
}

}  // namespace

std::int64_t ConstellationLayout::satellite_count() const {
    // one source per segment plus one memory node per interior boundary
    return (std::int64_t{2} << nesting_level) - 1;
}

double slant_range(double arc_km, const OrbitConfig& orbit, const EarthModel& earth) {
    require_nonnegative_arc(arc_km);
    const double r = earth.radius_km;
    const double s = r + orbit.altitude_km;
    const double delta = arc_km / r;
    const double d2 = r * r + s * s - 2.0 * r * s * std::cos(delta);
    return std::sqrt(std::max(d2, 0.0));
}

double elevation_angle(double arc_km, const OrbitConfig& orbit, const EarthModel& earth) {
    require_nonnegative_arc(arc_km);
    const double r = earth.radius_km;
    const double s = r + orbit.altitude_km;
    const double delta = arc_km / r;
    if (delta == 0.0) {
        return constants::pi / 2.0;
    }
    const double numerator = s * std::cos(delta) - r;
    if (numerator <= 0.0) {
        throw BelowHorizon("satellite at ground arc " + std::to_string(arc_km) +
                           " km is below the horizon for altitude " +
                           std::to_string(orbit.altitude_km) + " km");
    }
    return std::atan(numerator / (s * std::sin(delta)));
}

double intersat_range(double arc_km, const OrbitConfig& orbit, const EarthModel& earth) {
    require_nonnegative_arc(arc_km);
    const double s = earth.radius_km + orbit.altitude_km;
    const double delta = arc_km / earth.radius_km;
    return 2.0 * s * std::sin(delta / 2.0);
}

double arc_from_slant(double slant_km, const OrbitConfig& orbit, const EarthModel& earth) {
    const double r = earth.radius_km;
    const double s = r + orbit.altitude_km;
    const double cos_delta = (r * r + s * s - slant_km * slant_km) / (2.0 * r * s);
    if (!(slant_km >= 0.0) || cos_delta > 1.0 || cos_delta < -1.0) {
        throw DomainError("slant range " + std::to_string(slant_km) +
                          " km is not reachable at altitude " +
                          std::to_string(orbit.altitude_km) + " km");
    }
    return r * std::acos(cos_delta);
}

std::pair<LinkGeometry, LinkGeometry> los_midpoint_geometry(double total_ground_km,
                                                            const OrbitConfig& orbit,
                                                            const EarthModel& earth) {
    require_nonnegative_arc(total_ground_km);
    const double arc = total_ground_km / 2.0;
    LinkGeometry link;
    link.kind = LinkKind::SpaceGround;
    link.ground_arc_km = arc;
    link.path_length_km = slant_range(arc, orbit, earth);
    link.elevation_rad = elevation_angle(arc, orbit, earth);
    return {link, link};
}

ConstellationLayout constellation_layout(double total_ground_km, int nesting_level,
                                         const OrbitConfig& orbit, const EarthModel& earth,
                                         Architecture architecture) {
    if (nesting_level < 0) {
        throw DomainError("nesting level must be >= 0");
    }
    if (!(total_ground_km > 0.0)) {
        throw DomainError("total ground distance must be > 0");
    }

    ConstellationLayout layout;
    layout.nesting_level = nesting_level;
    layout.total_ground_distance_km = total_ground_km;
    layout.architecture = architecture;
    const std::int64_t segments = layout.segment_count();
    layout.segment_length_km = total_ground_km / static_cast<double>(segments);

    const double arc = layout.segment_length_km / 2.0;

    LinkGeometry ground_hop;
    ground_hop.kind = LinkKind::SpaceGround;
    ground_hop.ground_arc_km = arc;
    ground_hop.path_length_km = slant_range(arc, orbit, earth);
    ground_hop.elevation_rad = elevation_angle(arc, orbit, earth);

    LinkGeometry space_hop;
    space_hop.kind = LinkKind::InterSatellite;
    space_hop.ground_arc_km = arc;
    space_hop.path_length_km = intersat_range(arc, orbit, earth);
    space_hop.elevation_rad = std::numeric_limits<double>::quiet_NaN();

    layout.hops.reserve(static_cast<std::size_t>(2 * segments));
    for (std::int64_t seg = 0; seg < segments; ++seg) {
        const bool left_is_end = (seg == 0);
        const bool right_is_end = (seg == segments - 1);
        if (architecture == Architecture::HybridGround) {
            layout.hops.push_back(ground_hop);
            layout.hops.push_back(ground_hop);
        } else {
            layout.hops.push_back(left_is_end ? ground_hop : space_hop);
            layout.hops.push_back(right_is_end ? ground_hop : space_hop);
        }
    }
    return layout;
}

}  // namespace qlink::geometry
