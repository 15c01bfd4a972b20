#pragma once

#include "tweezer/constants.hpp"

// Lab-unit conversions. Configuration files quote trap depths as A/hbar in
// 2*pi*MHz, lengths in micrometers and times in milliseconds; the engine works
// in SI throughout.
namespace tw::units {

inline double depth_from_2pi_mhz(double f) { return f * 2.0 * pi * 1e6 * hbar; }
inline double depth_to_2pi_mhz(double j) { return j / (2.0 * pi * 1e6 * hbar); }

inline double length_from_um(double um) { return um * 1e-6; }
inline double length_to_um(double m) { return m * 1e6; }

inline double time_from_ms(double ms) { return ms * 1e-3; }
inline double time_to_ms(double s) { return s * 1e3; }

}  // namespace tw::units
