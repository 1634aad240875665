// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace trimdiff::constants {

// CODATA 2018
inline constexpr double hbar = 1.054571817e-34;      // J s
inline constexpr double planck_h = 6.62607015e-34;   // J s
inline constexpr double k_boltzmann = 1.380649e-23;  // J/K

// helium-4 atomic mass
inline constexpr double mass_he4 = 6.6465e-27;  // kg

}  // namespace trimdiff::constants

namespace trimdiff::units {

// The few-body solvers work in hbar = 1 units with lengths in nm and
// energies in mK (k_B = 1); conversions live at module boundaries.
inline constexpr double nm = 1e-9;  // m

inline double joule_to_mk(double e_joule)
{
    return e_joule / (constants::k_boltzmann * 1e-3);
}

inline double mk_to_joule(double e_mk)
{
    return e_mk * constants::k_boltzmann * 1e-3;
}

inline double kelvin_to_joule(double e_kelvin)
{
    return e_kelvin * constants::k_boltzmann;
}

// hbar^2 / (2 mu) in mK nm^2 for a reduced mass in kg.
inline double hbar2_over_2mu_mk_nm2(double reduced_mass_kg)
{
    double v = constants::hbar * constants::hbar / (2.0 * reduced_mass_kg);  // J m^2
    return joule_to_mk(v) / (nm * nm);
}

}  // namespace trimdiff::units
