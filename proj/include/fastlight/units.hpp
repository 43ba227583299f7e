#pragma once

#include <numbers>

namespace fastlight {

inline constexpr double speed_of_light = 299792458.0;  // m/s
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Config files carry ordinary frequencies (Hz, or MHz for linewidths and line
// centers); everything internal is angular (rad/s).
constexpr double hz_to_angular(double hz) { return two_pi * hz; }
constexpr double mhz_to_angular(double mhz) { return two_pi * 1e6 * mhz; }
constexpr double angular_to_hz(double omega) { return omega / two_pi; }
constexpr double angular_to_mhz(double omega) { return omega / (two_pi * 1e6); }

}  // namespace fastlight
