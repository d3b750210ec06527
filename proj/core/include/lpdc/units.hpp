#pragma once

#include <numbers>

// Internal unit system: micrometres, femtoseconds, rad/fs, rad/um.
// External files and the CLI speak nanometres and millimetres; convert at the boundary.
namespace lpdc {

inline constexpr double kSpeedOfLight = 0.299792458;  // um/fs
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double nm_to_um(double nm) { return nm * 1e-3; }
constexpr double um_to_nm(double um) { return um * 1e3; }
constexpr double mm_to_um(double mm) { return mm * 1e3; }
constexpr double um_to_mm(double um) { return um * 1e-3; }
constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

// fs/um -> fs/mm
constexpr double per_um_to_per_mm(double v) { return v * 1e3; }

constexpr double wavelength_to_omega(double lambda_um) { return kTwoPi * kSpeedOfLight / lambda_um; }
constexpr double omega_to_wavelength(double omega) { return kTwoPi * kSpeedOfLight / omega; }

}  // namespace lpdc
