#pragma once

#include <numbers>

namespace magsim::constants {

// CODATA 2018.
inline constexpr double hbar = 1.054571817e-34;   // J s
inline constexpr double k_boltzmann = 1.380649e-23; // J / K

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Electron gyromagnetic ratio as gamma / 2pi, in Hz per oersted.
inline constexpr double gyromagnetic_hz_per_oe = 2.8e6;

// YIG sphere defaults.
inline constexpr double default_spin_number = 2.8e17;
inline constexpr double default_kerr_hz = 8e-10; // K / 2pi

} // namespace magsim::constants
