#pragma once

namespace qlink::constants {

inline constexpr double pi = 3.14159265358979323846;

inline constexpr double speed_of_light_m_s = 2.99792458e8;
inline constexpr double speed_of_light_km_s = 299792.458;

// SI exact value
inline constexpr double planck_j_s = 6.62607015e-34;

inline constexpr double mean_earth_radius_km = 6371.0;

}  // namespace qlink::constants
