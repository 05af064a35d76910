#pragma once

// Atomic units throughout: hbar = m_e = e = 1, energies in hartree,
// times in atomic time units, fields in atomic field units.
namespace triwell::units {

inline constexpr double hartree_to_ev = 27.211386;
inline constexpr double ev_to_hartree = 1.0 / hartree_to_ev;
inline constexpr double au_time_to_fs = 0.02418884;
inline constexpr double au_time_to_ps = au_time_to_fs * 1e-3;
inline constexpr double fs_to_au_time = 1.0 / au_time_to_fs;
inline constexpr double ps_to_au_time = 1e3 * fs_to_au_time;
inline constexpr double hartree_to_cm1 = 219474.6314;
inline constexpr double cm1_to_hartree = 1.0 / hartree_to_cm1;
inline constexpr double planck_ev_s = 4.135667e-15;

// One atomic unit of field amplitude corresponds to this peak intensity.
inline constexpr double au_field_intensity_w_cm2 = 3.50944758e16;
// Intensity ceiling 1e14 W/cm2 translated to a field amplitude cap,
// E_max = sqrt(I_max / I_au).
inline constexpr double intensity_cap_w_cm2 = 1e14;
inline constexpr double field_cap_au = 5.3380e-2;
// Rabi-frequency cap = field cap times the 0.1 a.u. reference transition
// dipole of this model's working window.
inline constexpr double rabi_cap_au = 0.1 * field_cap_au;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double deg_to_rad = pi / 180.0;

} // namespace triwell::units
