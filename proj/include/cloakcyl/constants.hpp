#pragma once

#include <complex>
#include <numbers>

namespace cloak {

using Complex = std::complex<double>;

inline constexpr Complex kJ{0.0, 1.0};

/// Vacuum constants. The set is chosen so that f0 = 3e8 Hz gives a free-space
/// wavelength of exactly 1 m and the wave impedance is exactly 120*pi ohm.
/// mu0 = zeta0 / c = 4*pi*1e-7 and eps0 = 1 / (zeta0 * c) are consistent with it.
namespace phys {
inline constexpr double c = 3.0e8;
inline constexpr double zeta0 = 120.0 * std::numbers::pi;
inline constexpr double mu0 = zeta0 / c;
inline constexpr double eps0 = 1.0 / (zeta0 * c);
}  // namespace phys

/// Reference frequency used throughout the cloaking study (lambda0 = 1 m).
inline constexpr double kReferenceFrequency = 3.0e8;

inline double free_space_wavelength(double frequency) { return phys::c / frequency; }

}  // namespace cloak
