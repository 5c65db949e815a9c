#pragma once

// Library-wide units: natural units with hbar = c = k_B = 1. Lengths are in an
// arbitrary but consistent unit; imaginary frequencies and temperatures are
// then inverse lengths, energies per area are inverse length cubed, etc.

#include <numbers>

namespace casimir {

inline constexpr double pi = std::numbers::pi;
inline constexpr double zeta3 = 1.2020569031595943;

namespace si {
// CODATA 2018 exact / recommended values.
inline constexpr double hbar = 1.054571817e-34;          // J s
inline constexpr double c = 2.99792458e8;                // m / s
inline constexpr double k_B = 1.380649e-23;              // J / K
inline constexpr double hbar_c = hbar * c;               // J m
inline constexpr double eV = 1.602176634e-19;            // J
inline constexpr double rad_per_s_per_eV = eV / hbar;    // ~1.519e15
}  // namespace si

}  // namespace casimir
