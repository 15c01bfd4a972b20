#pragma once

namespace tw {

// CODATA 2018 values, compiled in so no configuration can drift the unit system.
inline constexpr double hbar = 1.054571817e-34;  // J s
inline constexpr double kb = 1.380649e-23;       // J/K
inline constexpr double pi = 3.14159265358979323846;

}  // namespace tw
