#pragma once

// SI <-> internal units (micrometres, c = 1).

#include <cmath>

namespace gbfiber::units {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kMicrometresPerMetre = 1e6;

inline double metres_to_um(double m) { return m * kMicrometresPerMetre; }
inline double um_to_metres(double um) { return um / kMicrometresPerMetre; }

// g in m/s^2 -> g / c^2 in 1/um
inline double acceleration_to_geometric(double g_si) {
    return g_si / (kSpeedOfLight * kSpeedOfLight) / kMicrometresPerMetre;
}

// vacuum wavelength in nm -> angular frequency in rad/um
inline double wavelength_nm_to_omega(double lambda_nm) { return 2.0 * M_PI / (lambda_nm * 1e-3); }

inline double omega_to_wavelength_nm(double omega) { return 2.0 * M_PI / omega * 1e3; }

} // namespace gbfiber::units
