#pragma once

#include <numbers>

namespace ccsl {

// CODATA 2018 values, SI units.
struct PhysicalConstants {
    double hbar;     // J s
    double m0;       // kg, nucleon reference mass (proton)
    double me;       // kg
    double e_charge; // C
    double eps0;     // F/m
    double c_light;  // m/s
    double kB;       // J/K
    double amu;      // kg
};

inline constexpr PhysicalConstants kConstants{
    .hbar = 1.054571817e-34,
    .m0 = 1.67262192369e-27,
    .me = 9.1093837015e-31,
    .e_charge = 1.602176634e-19,
    .eps0 = 8.8541878128e-12,
    .c_light = 299792458.0,
    .kB = 1.380649e-23,
    .amu = 1.66053906660e-27,
};

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kSqrtPi = 1.7724538509055160273;
// pi^(3/2)
inline constexpr double kPi32 = 5.5683279968317078453;

inline constexpr double hz_to_rad_s(double hz) { return kTwoPi * hz; }
inline constexpr double rad_s_to_hz(double w) { return w / kTwoPi; }

}  // namespace ccsl
