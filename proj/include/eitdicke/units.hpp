#pragma once

#include <numbers>

namespace eitdicke::units {

inline constexpr double kBoltzmann = 1.380649e-23;       // J/K
inline constexpr double kAtomicMassUnit = 1.66054e-27;   // kg
inline constexpr double kPascalPerTorr = 133.322;
inline constexpr double kZeroCelsius = 273.15;           // K
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline constexpr double kRb87MassU = 86.909;
inline constexpr double kNeonMassU = 20.18;

constexpr double hz_to_rad(double hz) { return kTwoPi * hz; }
constexpr double rad_to_hz(double rad_per_s) { return rad_per_s / kTwoPi; }
constexpr double mrad(double value) { return value * 1e-3; }
constexpr double to_mrad(double rad) { return rad * 1e3; }
constexpr double torr(double value) { return value * kPascalPerTorr; }
constexpr double celsius(double value) { return value + kZeroCelsius; }

}  // namespace eitdicke::units
