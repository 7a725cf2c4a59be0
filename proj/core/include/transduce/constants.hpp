#pragma once

#include <numbers>

// CODATA 2018 values (SI). h, e and k_B are exact by definition.
namespace transduce::constants {

inline constexpr double planck = 6.62607015e-34;             // J s
inline constexpr double hbar = planck / (2.0 * std::numbers::pi);  // 1.054571817e-34 J s
inline constexpr double boltzmann = 1.380649e-23;            // J/K
inline constexpr double elementary_charge = 1.602176634e-19; // C
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F/m
inline constexpr double vacuum_permeability = 1.25663706212e-6;  // N/A^2
inline constexpr double bohr_magneton = 9.2740100783e-24;    // J/T
inline constexpr double debye = 3.33564095198e-30;           // C m
inline constexpr double speed_of_light = 299792458.0;        // m/s

}  // namespace transduce::constants
