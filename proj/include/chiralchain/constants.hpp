#pragma once

// Physical constants (CODATA 2018) and the unit conversions used across the
// library. Internal unit system: energies in MHz on the rotor side, GHz on
// the spin-model side, dipoles in Debye, distances in nm.

namespace chiralchain::constants {

inline constexpr double planck_J_s = 6.62607015e-34;           // exact
inline constexpr double boltzmann_J_per_K = 1.380649e-23;      // exact
inline constexpr double elementary_charge_C = 1.602176634e-19; // exact
inline constexpr double vacuum_permittivity_F_per_m = 8.8541878128e-12;
inline constexpr double debye_C_m = 3.33564e-30;
inline constexpr double nm_m = 1e-9;

inline constexpr double four_pi_eps0 =
    4.0 * 3.14159265358979323846 * vacuum_permittivity_F_per_m;

// Energy of two 1-Debye dipoles at 1 nm, d^2/(4*pi*eps0*r^3), in Joules.
inline constexpr double dipole_pair_J_per_debye2_nm3 =
    debye_C_m * debye_C_m / (four_pi_eps0 * nm_m * nm_m * nm_m);

inline constexpr double mhz_to_ghz = 1e-3;

} // namespace chiralchain::constants
