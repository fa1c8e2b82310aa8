#pragma once

// Hartree atomic units throughout: hbar = m_e = e = 1, energies in Hartree,
// lengths in Bohr, c = 1/alpha_fs in atomic velocity units.

namespace darkcavity::units {

inline constexpr double kSpeedOfLight = 137.035999084;  // CODATA 2018, a.u.
inline constexpr double kHartreeInEv = 27.211386245988;
inline constexpr double kHartreeInMev = kHartreeInEv * 1.0e3;

inline constexpr double mev_to_hartree(double mev) { return mev / kHartreeInMev; }
inline constexpr double ev_to_hartree(double ev) { return ev / kHartreeInEv; }

}  // namespace darkcavity::units
